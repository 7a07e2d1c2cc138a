#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "experiments/registry.hpp"

namespace qf::experiments {

inline constexpr std::uint64_t kReferenceSeed = 20240611;
inline constexpr int kCriterionCount = 12;

struct AcceptanceOptions {
  // Experiment name or criterion number ("1".."12"); empty runs everything.
  std::optional<std::string> only;
  std::uint64_t seed = kReferenceSeed;
  std::optional<std::uint64_t> n_traj;
  bool perturb_lindblad_sign = false;
};

/*!
 * Strict parse of {"only", "seed", "n_traj", "perturb_lindblad_sign"};
 * throws ConfigError on unknown keys or wrong types.
 */
AcceptanceOptions acceptance_options_from_json(const json& j);

struct CriterionVerdict {
  int criterion = 0;
  bool pass = false;
  std::vector<const Verdict*> experiments;
};

struct AcceptanceReport {
  AcceptanceOptions options;
  std::vector<Verdict> verdicts;
  std::vector<Artifacts> artifacts;  // parallel to verdicts

  bool pass() const;
  // Criteria that had at least one experiment run, in order.
  std::vector<CriterionVerdict> criteria() const;
  json to_json() const;
};

// Experiments selected by `only` (all when unset). Throws ExperimentUnknown.
std::vector<const ExperimentInfo*> select_experiments(const std::optional<std::string>& only);

/*!
 * Runs the selected experiments with their default (desk-scale) params plus
 * the overrides. Errors inside an experiment become failing verdicts.
 */
AcceptanceReport run_acceptance(const AcceptanceOptions& options,
                                const std::function<void(const Verdict&)>& progress = {});

// One line per criterion: "PASS  criterion  3  zakai-martingale: ...".
std::vector<std::string> criterion_lines(const AcceptanceReport& report);

// acceptance.json plus each experiment's artifacts under <dir>/<name>/.
void write_acceptance(const std::filesystem::path& dir, const AcceptanceReport& report);

}  // namespace qf::experiments
