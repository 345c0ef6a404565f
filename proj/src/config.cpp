#include "rlab/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "rlab/csv.hpp"
#include "rlab/operators.hpp"

namespace rlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size() && std::isfinite(out);
  } catch (...) {
    return false;
  }
}

bool parse_long(const std::string& s, long& out) {
  try {
    std::size_t pos = 0;
    out = std::stol(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  try {
    std::size_t pos = 0;
    out = std::stoull(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_counterfunction(const std::string& token, Counterfunction& g) {
  if (token == "identity") {
    g = Counterfunction::identity();
    return true;
  }
  if (token.rfind("const:", 0) == 0) {
    long c = 0;
    if (!parse_long(token.substr(6), c) || c < 0) return false;
    g = Counterfunction::constant(c);
    return true;
  }
  if (token.rfind("affine:", 0) == 0) {
    const auto rest = token.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) return false;
    long a = 0, b0 = 0;
    if (!parse_long(rest.substr(0, colon), a) || !parse_long(rest.substr(colon + 1), b0))
      return false;
    if (a < 0 || b0 < 0) return false;
    g = Counterfunction::affine(a, b0);
    return true;
  }
  return false;
}

bool is_known_label(const std::string& value, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (value == a) return true;
  }
  return false;
}

}  // namespace

ValidateResult validate_config(std::string_view text) {
  ValidateResult result;
  ExperimentConfig cfg;
  std::vector<ConfigError>& errors = result.errors;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::string section;
  bool saw_space = false, saw_epsilons = false, saw_counterfunctions = false;
  cfg.counterfunctions.clear();

  auto err = [&](int line, const std::string& field, const std::string& msg) {
    errors.push_back(ConfigError{line, field, msg});
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        err(lineno, "", "malformed section header: " + line);
        continue;
      }
      section = line.substr(1, line.size() - 2);
      if (!is_known_label(section, {"space", "operator", "base_point", "sequence", "moduli",
                                    "epsilons", "counterfunctions", "tolerances", "seed"})) {
        err(lineno, section, "unknown section [" + section + "]");
        section.clear();
      }
      if (section == "space") saw_space = true;
      if (section == "epsilons") saw_epsilons = true;
      if (section == "counterfunctions") saw_counterfunctions = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err(lineno, "", "expected key = value: " + line);
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      err(lineno, key, "key outside of any section");
      continue;
    }

    if (section == "space") {
      if (key == "p") {
        double p;
        if (!parse_double(value, p)) {
          err(lineno, key, "p must be a number");
        } else if (!(p > 1.0)) {
          err(lineno, key, "p must exceed 1");
        } else {
          cfg.p = p;
        }
      } else if (key == "dim") {
        long d;
        if (!parse_long(value, d) || d < 1) {
          err(lineno, key, "dim must be a positive integer");
        } else {
          cfg.dim = static_cast<int>(d);
        }
      } else {
        err(lineno, key, "unknown key in [space]");
      }
    } else if (section == "operator") {
      if (key == "name") {
        cfg.operator_name = value;
        if (value != "zoo") {
          bool known = false;
          for (const auto& n : zoo_names()) known = known || (n == value);
          if (!known) {
            std::string zoo_list;
            for (const auto& n : zoo_names()) zoo_list += (zoo_list.empty() ? "" : ", ") + n;
            err(lineno, key, "unknown operator '" + value + "' (zoo entries: " + zoo_list + ")");
          }
        }
      } else if (key == "pairs_csv") {
        cfg.pairs_csv = value;
      } else {
        std::vector<double> vals;
        for (const auto& tok : split_ws(value)) {
          double v;
          if (!parse_double(tok, v)) {
            err(lineno, key, "parameter values must be numbers");
            vals.clear();
            break;
          }
          vals.push_back(v);
        }
        if (!vals.empty()) cfg.operator_params[key] = vals;
      }
    } else if (section == "base_point") {
      if (key == "x") {
        Vec x;
        for (const auto& tok : split_ws(value)) {
          double v;
          if (!parse_double(tok, v)) {
            err(lineno, key, "base point coordinates must be numbers");
            x.clear();
            break;
          }
          x.push_back(v);
        }
        cfg.base_point = x;
      } else {
        err(lineno, key, "unknown key in [base_point]");
      }
    } else if (section == "sequence") {
      if (key == "kind") {
        if (!is_known_label(value, {"lambda", "t"})) {
          err(lineno, key, "sequence kind must be lambda or t");
        } else {
          cfg.sequence_kind = value;
        }
      } else if (key == "formula") {
        if (!is_known_label(value, {"n_plus_1", "t_default"})) {
          err(lineno, key, "sequence formula must be n_plus_1 or t_default");
        } else {
          cfg.sequence_formula = value;
        }
      } else if (key == "n_max") {
        long n;
        if (!parse_long(value, n) || n < 1) {
          err(lineno, key, "n_max must be a positive integer");
        } else {
          cfg.n_max = n;
        }
      } else {
        err(lineno, key, "unknown key in [sequence]");
      }
    } else if (section == "moduli") {
      if (key == "b") {
        long b;
        if (!parse_long(value, b) || b < 0) {
          err(lineno, key, "b must be a nonnegative integer (0 = from domain)");
        } else {
          cfg.b = b;
        }
      } else if (key == "eta") {
        if (!is_known_label(value, {"lp", "rational"})) {
          err(lineno, key, "eta must be lp or rational");
        } else {
          cfg.eta_label = value;
        }
      } else if (key == "tau") {
        if (!is_known_label(value, {"lp", "rational"})) {
          err(lineno, key, "tau must be lp or rational");
        } else {
          cfg.tau_label = value;
        }
      } else if (key == "p_fn") {
        if (!is_known_label(value, {"default", "identity"})) {
          err(lineno, key, "p_fn must be default or identity");
        } else {
          cfg.p_fn_label = value;
        }
      } else if (key == "s_fn") {
        if (!is_known_label(value, {"identity", "double"})) {
          err(lineno, key, "s_fn must be identity or double");
        } else {
          cfg.s_fn_label = value;
        }
      } else {
        err(lineno, key, "unknown key in [moduli]");
      }
    } else if (section == "epsilons") {
      if (key == "values") {
        std::vector<double> eps;
        for (const auto& tok : split_ws(value)) {
          double v;
          if (!parse_double(tok, v) || !(v > 0.0)) {
            err(lineno, key, "epsilons must be positive numbers");
            eps.clear();
            break;
          }
          eps.push_back(v);
        }
        if (!eps.empty()) cfg.epsilons = eps;
      } else {
        err(lineno, key, "unknown key in [epsilons]");
      }
    } else if (section == "counterfunctions") {
      if (key == "list") {
        for (const auto& tok : split_ws(value)) {
          Counterfunction g;
          if (!parse_counterfunction(tok, g)) {
            err(lineno, key,
                "bad counterfunction '" + tok + "' (use const:c, identity, affine:a:b)");
          } else {
            cfg.counterfunctions.push_back(g);
          }
        }
      } else {
        err(lineno, key, "unknown key in [counterfunctions]");
      }
    } else if (section == "tolerances") {
      if (key == "resolvent") {
        double v;
        if (!parse_double(value, v) || !(v > 0.0)) {
          err(lineno, key, "resolvent tolerance must be positive");
        } else {
          cfg.resolvent_tol = v;
        }
      } else if (key == "audit") {
        double v;
        if (!parse_double(value, v) || !(v > 0.0)) {
          err(lineno, key, "audit tolerance must be positive");
        } else {
          cfg.audit_tol = v;
        }
      } else {
        err(lineno, key, "unknown key in [tolerances]");
      }
    } else if (section == "seed") {
      if (key == "value") {
        std::uint64_t v;
        if (!parse_u64(value, v)) {
          err(lineno, key, "seed must be an unsigned integer");
        } else {
          cfg.seed = v;
        }
      } else {
        err(lineno, key, "unknown key in [seed]");
      }
    }
  }

  if (!saw_space) err(0, "space", "space section required");
  if (!saw_epsilons) err(0, "epsilons", "epsilons section required");
  if (!saw_counterfunctions) err(0, "counterfunctions", "counterfunctions section required");
  if (cfg.counterfunctions.empty() && saw_counterfunctions)
    err(0, "counterfunctions", "at least one counterfunction required");

  // cross-field checks
  if (cfg.sequence_kind == "lambda" && cfg.sequence_formula == "t_default")
    err(0, "sequence", "formula t_default needs kind = t");
  if (cfg.sequence_kind == "t" && cfg.sequence_formula == "n_plus_1")
    err(0, "sequence", "formula n_plus_1 needs kind = lambda");
  if (!cfg.base_point.empty() && cfg.operator_name != "zoo" &&
      static_cast<int>(cfg.base_point.size()) != cfg.dim)
    err(0, "base_point", "base point has " + std::to_string(cfg.base_point.size()) +
                             " coordinates but dim = " + std::to_string(cfg.dim));

  if (errors.empty()) result.config = cfg;
  return result;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[space]\n";
  os << "p = " << format_double(c.p) << "\n";
  os << "dim = " << c.dim << "\n\n";

  os << "[operator]\n";
  os << "name = " << c.operator_name << "\n";
  for (const auto& [key, vals] : c.operator_params) {
    os << key << " =";
    for (double v : vals) os << " " << format_double(v);
    os << "\n";
  }
  if (!c.pairs_csv.empty()) os << "pairs_csv = " << c.pairs_csv << "\n";
  os << "\n";

  if (!c.base_point.empty()) {
    os << "[base_point]\n";
    os << "x =";
    for (double v : c.base_point) os << " " << format_double(v);
    os << "\n\n";
  }

  os << "[sequence]\n";
  os << "kind = " << c.sequence_kind << "\n";
  os << "formula = " << c.sequence_formula << "\n";
  os << "n_max = " << c.n_max << "\n\n";

  os << "[moduli]\n";
  os << "b = " << c.b << "\n";
  os << "eta = " << c.eta_label << "\n";
  os << "tau = " << c.tau_label << "\n";
  os << "p_fn = " << c.p_fn_label << "\n";
  os << "s_fn = " << c.s_fn_label << "\n\n";

  os << "[epsilons]\n";
  os << "values =";
  for (double v : c.epsilons) os << " " << format_double(v);
  os << "\n\n";

  os << "[counterfunctions]\n";
  os << "list =";
  for (const auto& g : c.counterfunctions) os << " " << g.label();
  os << "\n\n";

  os << "[tolerances]\n";
  os << "resolvent = " << format_double(c.resolvent_tol) << "\n";
  os << "audit = " << format_double(c.audit_tol) << "\n\n";

  os << "[seed]\n";
  os << "value = " << c.seed << "\n";
  return os.str();
}

std::string format_config_errors(const std::vector<ConfigError>& errors) {
  std::ostringstream os;
  for (const auto& e : errors) {
    os << "config error";
    if (e.line > 0) os << " (line " << e.line << ")";
    if (!e.field.empty()) os << " [" << e.field << "]";
    os << ": " << e.message << "\n";
  }
  return os.str();
}

}  // namespace rlab
