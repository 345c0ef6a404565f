#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rlab/config.hpp"
#include "rlab/runner.hpp"

namespace {

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream os;
  os << in.rdbuf();
  ok = true;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resolvent-lab: resolvents of accretive operators in l_p geometry, the "
               "quantitative moduli chain, and metastability search"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  const std::pair<const char*, const char*> subs[] = {
      {"moduli", "evaluate the moduli chain on the configured grid (moduli.csv)"},
      {"curve", "emit the approximating curve x_n = J_{lambda_n A} x (curve_<op>.csv)"},
      {"metastab", "search least metastable N per (epsilon, g) cell (metastab.csv)"},
      {"audit", "run every inequality audit (audit.csv)"},
      {"all", "moduli + curve + metastab + audit"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", config_path, "experiment config file")->required();
    sc->add_option("--out", out_dir, "output directory (default: $RESOLVENT_LAB_OUT or ./out)");
    sc->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
      seed_set = true;
    });
  }

  CLI11_PARSE(app, argc, argv);

  bool read_ok = false;
  const std::string text = read_file(config_path, read_ok);
  if (!read_ok) {
    std::cerr << "config error: cannot read " << config_path << "\n";
    return 2;
  }

  rlab::ValidateResult validated = rlab::validate_config(text);
  if (!validated.ok()) {
    std::cerr << rlab::format_config_errors(validated.errors);
    return 2;
  }

  rlab::RunOptions opt;
  opt.subcommand = app.get_subcommands().front()->get_name();
  if (!out_dir.empty()) {
    opt.out_dir = out_dir;
  } else if (const char* env = std::getenv("RESOLVENT_LAB_OUT")) {
    opt.out_dir = env;
  } else {
    opt.out_dir = "out";
  }
  if (seed_set) opt.seed_override = seed;

  try {
    return rlab::run_experiment(*validated.config, opt);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
