#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rlab/config.hpp"

namespace rlab {

struct RunOptions {
  std::string subcommand = "all";  // moduli | curve | metastab | audit | all
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed_override;
};

// Executes the requested subcommands, writes CSV reports plus summary.txt
// under out_dir, and returns 0 iff every executed audit passed (1 otherwise).
// Output is a pure function of config + seed: identical runs are byte
// identical.
int run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace rlab
