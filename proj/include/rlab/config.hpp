#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/counterfunction.hpp"
#include "rlab/vec.hpp"

namespace rlab {

// Flat key = value sections; values are numbers, words or space-separated
// numeric lists.  Counterfunctions and sequences are labels plus numeric
// parameters, never expressions.
struct ExperimentConfig {
  // [space]
  double p = 2.0;
  int dim = 2;

  // [operator]  (name "zoo" runs every shipped family with its own defaults)
  std::string operator_name = "zero";
  std::map<std::string, std::vector<double>> operator_params;
  std::string pairs_csv;  // optional raw graph pairs for the accretivity checks

  // [base_point]  (empty -> family default)
  Vec base_point;

  // [sequence]
  std::string sequence_kind = "lambda";       // lambda | t
  std::string sequence_formula = "n_plus_1";  // n_plus_1 | t_default
  long n_max = 50;

  // [moduli]  (b = 0 -> taken from the operator domain)
  long b = 0;
  std::string eta_label = "lp";        // lp | rational
  std::string tau_label = "lp";        // lp | rational
  std::string p_fn_label = "default";  // default | identity
  std::string s_fn_label = "identity"; // identity | double

  // [epsilons]
  std::vector<double> epsilons{0.1};

  // [counterfunctions]
  std::vector<Counterfunction> counterfunctions{Counterfunction::constant(1)};

  // [tolerances]
  double resolvent_tol = 1e-10;
  double audit_tol = 1e-8;

  // [seed]
  std::uint64_t seed = 1;
};

struct ConfigError {
  int line = 0;  // 0 when the error is not tied to a line
  std::string field;
  std::string message;
};

struct ValidateResult {
  std::optional<ExperimentConfig> config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty() && config.has_value(); }
};

// Total on arbitrary text; accumulates every error instead of stopping.
ValidateResult validate_config(std::string_view text);

// Canonical form; validate(serialize(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& c);

std::string format_config_errors(const std::vector<ConfigError>& errors);

}  // namespace rlab
