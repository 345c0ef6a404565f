#include "rlab/runner.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "rlab/csv.hpp"
#include "rlab/exact.hpp"
#include "rlab/metastability.hpp"
#include "rlab/moduli.hpp"
#include "rlab/operators.hpp"
#include "rlab/resolvent.hpp"

namespace rlab {

namespace {

namespace fs = std::filesystem;

struct Cell {
  ZooEntry entry;
  long b = 2;
};

long integer_b(const ExperimentConfig& cfg, const ZooEntry& e) {
  if (cfg.b > 0) return cfg.b;
  if (e.op.domain().diameter_bound) {
    return static_cast<long>(std::ceil(*e.op.domain().diameter_bound - 1e-12));
  }
  return 2;
}

std::vector<Cell> build_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  if (cfg.operator_name == "zoo") {
    for (auto& e : default_zoo()) {
      Cell c{e, 0};
      c.b = integer_b(cfg, e);
      cells.push_back(std::move(c));
    }
    return cells;
  }
  LpSpace s(cfg.p, cfg.dim);
  ZooEntry e = make_zoo_entry(cfg.operator_name, cfg.operator_params, &s);
  if (!cfg.base_point.empty()) {
    e.space.check_member(cfg.base_point);
    if (!e.op.domain().contains(e.space, cfg.base_point)) {
      throw std::invalid_argument("base point lies outside the operator domain");
    }
    e.base_point = cfg.base_point;
  }
  Cell c{e, 0};
  c.b = integer_b(cfg, e);
  cells.push_back(std::move(c));
  return cells;
}

std::vector<double> build_lambdas(const ExperimentConfig& cfg) {
  if (cfg.sequence_kind == "lambda") return default_lambda_sequence(cfg.n_max);
  std::vector<double> ts = default_t_sequence(cfg.n_max);
  std::vector<double> ls(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ls[i] = lambda_of_t(ts[i]);
  return ls;
}

ModuliChain build_chain(const ExperimentConfig& cfg, long b, const LpSpace& s) {
  ModuliChain ch;
  ch.b = b;
  ch.eta = (cfg.eta_label == "lp") ? lp_convexity_modulus(s) : rational_convexity_modulus();
  ch.tau = (cfg.tau_label == "lp") ? lp_smoothness_modulus(s) : rational_smoothness_modulus();
  ch.p_fn = make_p_fn(cfg.p_fn_label);
  ch.p_fn_label = cfg.p_fn_label;
  ch.s_fn = make_s_fn(cfg.s_fn_label);
  ch.s_fn_label = cfg.s_fn_label;
  ch.g = cfg.counterfunctions.front();
  return ch;
}

std::string fmt_or_empty(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string fmt_or_empty_long(const std::optional<long>& v) {
  return v ? std::to_string(*v) : std::string();
}

// -------- moduli table --------

struct ModuliRowSink {
  CsvWriter csv;
  long rows = 0;
  void emit(const std::string& quantity, std::optional<double> eps, std::optional<double> lambda,
            std::optional<long> c, std::optional<long> d, std::optional<long> m,
            std::optional<long> n, double value, const std::optional<Rat>& exact) {
    csv.row({quantity, fmt_or_empty(eps), fmt_or_empty(lambda), fmt_or_empty_long(c),
             fmt_or_empty_long(d), fmt_or_empty_long(m), fmt_or_empty_long(n),
             format_double(value), exact ? rat_to_string(*exact) : std::string()});
    ++rows;
  }
};

long run_moduli(const ExperimentConfig& cfg, const fs::path& out, std::ostringstream& summary) {
  LpSpace s(cfg.p, cfg.dim);
  const long b = cfg.b > 0 ? cfg.b : 2;
  ModuliChain chain = build_chain(cfg, b, s);
  const SequenceModuli seq =
      (cfg.sequence_kind == "lambda") ? default_lambda_moduli() : default_t_moduli();
  const auto& gamma = seq.gamma;

  const bool exact_avail = (cfg.eta_label == "rational" && cfg.tau_label == "rational");
  const Rat rb(b);
  const RatFn reta = rational_eta();
  const RatFn rtau = rational_tau();
  const RatFn rp = make_p_fn_exact(cfg.p_fn_label);
  const auto s_fn = make_s_fn(cfg.s_fn_label);

  const std::vector<std::string> header = {"quantity", "eps", "lambda", "c",
                                           "d",        "m",   "n",      "float_value",
                                           "exact_value"};
  ModuliRowSink sink{CsvWriter(out / "moduli.csv", header)};

  const std::vector<double> lambda_grid{1.0, 10.0};
  const std::vector<std::pair<long, long>> cd_grid{{0, 1}, {2, 3}};
  const std::vector<std::pair<long, long>> mn_grid{{0, 0}, {3, 2}};

  for (double eps : cfg.epsilons) {
    const Rat reps(eps);
    if (eps <= 2.0) {
      sink.emit("psi", eps, {}, {}, {}, {}, {}, chain.psi(eps),
                exact_avail ? std::optional<Rat>(psi_exact(rb, reta, reps)) : std::nullopt);
      sink.emit("eta1", eps, {}, {}, {}, {}, {}, chain.eta1(eps),
                exact_avail ? std::optional<Rat>(eta1_exact(rb, reta, reps)) : std::nullopt);
    }
    sink.emit("omega_tau", eps, {}, {}, {}, {}, {}, chain.omega(eps),
              exact_avail ? std::optional<Rat>(omega_exact(rtau, rb, reps)) : std::nullopt);
    sink.emit("eta2", eps, {}, {}, {}, {}, {}, chain.eta2(eps),
              exact_avail ? std::optional<Rat>(eta2_exact(rb, reta, rtau, reps)) : std::nullopt);
    for (double lambda : lambda_grid) {
      sink.emit("delta", eps, lambda, {}, {}, {}, {}, chain.delta(eps, lambda),
                exact_avail
                    ? std::optional<Rat>(delta_exact(rb, reta, rtau, reps, Rat(lambda)))
                    : std::nullopt);
    }
    for (auto [c, d] : cd_grid) {
      sink.emit("beta", eps, {}, c, {}, {}, {}, chain.beta(gamma, c, eps),
                exact_avail ? std::optional<Rat>(beta_exact(rb, rp, gamma, c, reps))
                            : std::nullopt);
      sink.emit("q", eps, {}, c, d, {}, {}, chain.q_mod(gamma, c, d, eps),
                exact_avail
                    ? std::optional<Rat>(q_mod_exact(rb, rtau, rp, gamma, s_fn, c, d, reps))
                    : std::nullopt);
      sink.emit("nu1", eps, {}, c, d, {}, {}, chain.nu1(gamma, c, d, eps),
                exact_avail
                    ? std::optional<Rat>(nu1_exact(rb, reta, rtau, rp, gamma, s_fn, c, d, reps))
                    : std::nullopt);
    }
    for (auto [m, n] : mn_grid) {
      const long gM = g_majorant(chain.g, n);
      sink.emit("nu1_star", eps, {}, {}, {}, m, n, chain.nu1_star(gamma, m, n, eps),
                exact_avail ? std::optional<Rat>(
                                  nu1_star_exact(rb, reta, rtau, rp, gamma, m, n, gM, reps))
                            : std::nullopt);
    }
  }
  summary << "[moduli] rows=" << sink.rows << " b=" << b
          << " exact=" << (exact_avail ? "yes" : "no") << "\n";
  return sink.rows;
}

// -------- curve / metastab / audit --------

void write_curve_csv(const fs::path& out, const Cell& cell, const Curve& curve) {
  std::vector<std::string> header{"n", "lambda_n"};
  for (int i = 0; i < cell.entry.space.dim; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("residual");
  CsvWriter csv(out / ("curve_" + cell.entry.name + ".csv"), header);
  for (long n = 0; n < curve.length(); ++n) {
    std::vector<std::string> row{std::to_string(n),
                                 format_double(curve.lambdas[static_cast<std::size_t>(n)])};
    for (double c : curve.points[static_cast<std::size_t>(n)]) row.push_back(format_double(c));
    row.push_back(format_double(curve.residuals[static_cast<std::size_t>(n)]));
    csv.row(row);
  }
}

Curve truncated(const Curve& curve, long max_len) {
  if (curve.length() <= max_len) return curve;
  Curve t;
  t.base_point = curve.base_point;
  t.points.assign(curve.points.begin(), curve.points.begin() + max_len);
  t.lambdas.assign(curve.lambdas.begin(), curve.lambdas.begin() + max_len);
  t.residuals.assign(curve.residuals.begin(), curve.residuals.begin() + max_len);
  return t;
}

void audit_row(CsvWriter& csv, const AuditReport& r, bool& all_passed, long& passed_count,
               long& total_count) {
  const bool counts = r.applicable;
  if (counts && !r.passed) all_passed = false;
  ++total_count;
  if (!counts || r.passed) ++passed_count;
  std::string passed_field = r.applicable ? (r.passed ? "true" : "false") : "inapplicable";
  csv.row({r.name, passed_field,
           std::isfinite(r.worst_margin) ? format_double(r.worst_margin) : std::string("none"),
           format_double(r.tolerance), r.witness.value_or(""), std::to_string(r.samples),
           r.note});
}

struct AuditContext {
  const ExperimentConfig& cfg;
  CsvWriter& csv;
  bool& all_passed;
  long& passed;
  long& total;
};

void run_cell_audits(AuditContext& ctx, const Cell& cell, const Curve& curve) {
  const ExperimentConfig& cfg = ctx.cfg;
  const LpSpace& s = cell.entry.space;
  const Operator& a = cell.entry.op;
  const std::string& name = cell.entry.name;
  const double tol = cfg.audit_tol;
  auto seed_for = [&](const std::string& tag) {
    return derive_seed(cfg.seed, name + ":" + tag);
  };
  auto push = [&](AuditReport r) { audit_row(ctx.csv, r, ctx.all_passed, ctx.passed, ctx.total); };

  // curve residual certificate
  {
    AuditReport r;
    r.name = name + ":curve_residuals";
    r.tolerance = cfg.resolvent_tol;
    r.record(curve.max_residual(), "max over n");
    r.samples = curve.length();
    push(r);
  }

  // modulus verifiers on the configured epsilon grid
  for (double eps : cfg.epsilons) {
    if (eps <= 2.0) {
      AuditReport r = verify_convexity_modulus(s, lp_convexity_modulus(s), eps, 2000,
                                               seed_for("conv:" + format_double(eps)), 1e-9);
      r.name = name + ":" + r.name;
      push(r);
    }
    AuditReport r = verify_smoothness_modulus(s, lp_smoothness_modulus(s), eps, 2000,
                                              seed_for("smooth:" + format_double(eps)), 1e-9);
    r.name = name + ":" + r.name;
    push(r);
  }

  // accretivity, both characterizations, plus verdict agreement
  bool metric_all = true;
  for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
    AuditReport r = check_accretive_metric(a, s, lambda, SamplePlan{64, seed_for("metric")}, 1e-9);
    metric_all = metric_all && r.passed;
    push(r);
  }
  AuditReport dual = check_accretive_dual(a, s, SamplePlan{64, seed_for("dual")}, 1e-9);
  const bool dual_pass = dual.passed;
  push(std::move(dual));
  {
    AuditReport agree;
    agree.name = name + ":kato_agreement";
    agree.tolerance = 0.5;
    agree.record(metric_all == dual_pass ? 0.0 : 1.0, "metric vs dual verdicts");
    push(agree);
  }

  // pseudocontraction checks on T with A = Id - T
  {
    Mapping t_map;
    if (a.kind() == Operator::Kind::id_minus_T) {
      t_map = a.mapping();
    } else {
      t_map.label = "id_minus(" + name + ")";
      t_map.eval = [&a](const Vec& x) { return sub(x, a.eval(x)); };
    }
    const std::vector<double> t_grid{0.1, 0.5, 1.0, 2.0, 10.0};
    AuditReport r = check_pseudocontraction(t_map, s, a.domain(),
                                            SamplePlan{48, seed_for("psc")}, t_grid, 1e-9);
    r.name = name + ":" + r.name;
    push(r);

    Mapping u_map = strong_pseudocontraction(t_map, 0.9, cell.entry.base_point);
    AuditReport rs = check_strong_pseudocontraction(u_map, 0.9, s, a.domain(),
                                                    SamplePlan{48, seed_for("strong_psc")}, 1e-9);
    rs.name = name + ":" + rs.name;
    push(rs);
  }

  // resolvent: nonexpansiveness and domain closure over the lambda grid
  const std::vector<double> lambda_grid{0.1, 1.0, 10.0, 100.0, 1000.0};
  for (double lambda : lambda_grid) {
    AuditReport r = check_resolvent_nonexpansive(a, s, lambda, SamplePlan{16, seed_for("nonexp")},
                                                 cell.entry.known_zeros, 1e-8);
    push(r);
  }
  {
    AuditReport r;
    r.name = name + ":domain_closure";
    r.tolerance = 1e-8;
    Rng rng(seed_for("closure"));
    ResolveOptions opt;
    opt.tol = cfg.resolvent_tol;
    for (int k = 0; k < 16; ++k) {
      Vec y = a.domain().sample(s, rng);
      for (double lambda : lambda_grid) {
        ResolventResult j = resolve(a, s, lambda, y, opt);
        r.record(a.domain().violation(s, j.point),
                 "lambda=" + format_double(lambda) + " sample " + std::to_string(k));
      }
    }
    push(r);
  }

  // asymptotic regularity and projection inequality on the first 201 points
  const Curve head = truncated(curve, 201);
  push(audit_asymptotic_regularity(head, a, s, static_cast<double>(cell.b), tol));
  for (std::size_t zi = 0; zi < cell.entry.known_zeros.size(); ++zi) {
    AuditReport r = audit_projection_inequality(head, a, s, cell.entry.known_zeros[zi], tol);
    r.name += "(zero " + std::to_string(zi) + ")";
    push(r);
  }

  // quantitative inequalities around the first known zero
  if (!cell.entry.known_zeros.empty()) {
    ModuliChain chain = build_chain(cfg, cell.b, s);
    const Vec& z0 = cell.entry.known_zeros.front();
    for (double eps : cfg.epsilons) {
      for (double lambda : {1.0, 10.0}) {
        push(audit_e1j_e2j(a, s, cell.entry.base_point, lambda, z0, chain, eps, tol));
      }
    }
    const long h = curve.length() - 1;
    const double lambda_h = curve.lambdas.back();
    const double nu = 8.0 * static_cast<double>(cell.b * cell.b) / lambda_h;
    push(audit_subclaim1(a, s, curve, z0, h, chain, nu, tol));
  }

  // limit-point estimate and the sunny-retraction inequality
  {
    const double lambda_tail = 1e4;
    const double sunny_tol = 1e-6;
    QEstimate q = estimate_Q(a, s, cell.entry.base_point, lambda_tail, sunny_tol);
    AuditReport reg;
    reg.name = name + ":q_regularity";
    reg.tolerance = sunny_tol;
    reg.record(q.regularity_gap - static_cast<double>(cell.b) / lambda_tail,
               "gap vs b/lambda_tail");
    push(reg);
    push(audit_sunny(a, s, cell.entry.base_point, q.point, cell.entry.known_zeros, sunny_tol,
                     lambda_tail));
  }

  // raw graph pairs, when supplied
  if (!cfg.pairs_csv.empty() && cfg.operator_name != "zoo") {
    auto pairs = load_graph_pairs_csv(cfg.pairs_csv, s.dim);
    AuditReport rm = check_accretive_metric_pairs(pairs, s, 1.0, 1e-9);
    rm.name = name + ":csv_" + rm.name;
    push(rm);
    AuditReport rd = check_accretive_dual_pairs(pairs, s, 1e-9);
    rd.name = name + ":csv_" + rd.name;
    push(rd);
  }
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg_in, const RunOptions& opt) {
  ExperimentConfig cfg = cfg_in;
  if (opt.seed_override) cfg.seed = *opt.seed_override;
  const std::string& sub = opt.subcommand;
  if (sub != "moduli" && sub != "curve" && sub != "metastab" && sub != "audit" && sub != "all") {
    throw std::invalid_argument("unknown subcommand: " + sub);
  }

  fs::create_directories(opt.out_dir);
  std::ostringstream summary;
  summary << "resolvent-lab summary\n";
  summary << "operator=" << cfg.operator_name << " subcommand=" << sub << " seed=" << cfg.seed
          << " n_max=" << cfg.n_max << "\n";

  bool ok = true;

  if (sub == "moduli" || sub == "all") run_moduli(cfg, opt.out_dir, summary);

  const bool need_curves = (sub == "curve" || sub == "metastab" || sub == "audit" || sub == "all");
  if (!need_curves) {
    summary << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
    std::ofstream sf(opt.out_dir / "summary.txt", std::ios::binary);
    sf << summary.str();
    return ok ? 0 : 1;
  }

  const std::vector<Cell> cells = build_cells(cfg);
  const std::vector<double> lambdas = build_lambdas(cfg);
  ResolveOptions curve_opt;
  curve_opt.tol = cfg.resolvent_tol;

  std::vector<Curve> curves;
  curves.reserve(cells.size());
  for (const Cell& cell : cells) {
    curves.push_back(
        generate_curve(cell.entry.op, cell.entry.space, cell.entry.base_point, lambdas, curve_opt));
  }

  if (sub == "curve" || sub == "all") {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      write_curve_csv(opt.out_dir, cells[i], curves[i]);
      summary << "[curve] " << cells[i].entry.name << ": length=" << curves[i].length()
              << " max_residual=" << format_double(curves[i].max_residual()) << "\n";
      if (curves[i].max_residual() > cfg.resolvent_tol) ok = false;
    }
  }

  if (sub == "metastab" || sub == "all") {
    const std::vector<std::string> header{"operator",   "p",       "epsilon",     "g_label",
                                          "N_found",    "window_max_gap", "curve_length"};
    CsvWriter csv(opt.out_dir / "metastab.csv", header);
    long found_count = 0, cell_count = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (double eps : cfg.epsilons) {
        for (const Counterfunction& g : cfg.counterfunctions) {
          MetastabilitySearch res =
              find_metastable_N(curves[i], cells[i].entry.space, eps, g, cfg.n_max);
          ++cell_count;
          if (res.found) ++found_count;
          else ok = false;
          csv.row({cells[i].entry.name, format_double(cells[i].entry.space.p),
                   format_double(eps), g.label(),
                   res.found ? std::to_string(res.n) : std::string("not_found"),
                   res.found ? format_double(res.window_max_gap) : std::string(),
                   std::to_string(res.required_length)});
        }
      }
    }
    summary << "[metastab] cells=" << cell_count << " found=" << found_count << "\n";
  }

  if (sub == "audit" || sub == "all") {
    const std::vector<std::string> header{"name",    "passed",  "worst_margin", "tolerance",
                                          "witness", "samples", "note"};
    CsvWriter csv(opt.out_dir / "audit.csv", header);
    bool all_passed = true;
    long passed = 0, total = 0;
    AuditContext ctx{cfg, csv, all_passed, passed, total};
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell_audits(ctx, cells[i], curves[i]);
    summary << "[audit] reports=" << total << " passed=" << passed << "\n";
    if (!all_passed) ok = false;
  }

  summary << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
  std::ofstream sf(opt.out_dir / "summary.txt", std::ios::binary);
  sf << summary.str();
  return ok ? 0 : 1;
}

}  // namespace rlab
