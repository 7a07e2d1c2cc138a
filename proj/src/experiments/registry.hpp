#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "experiments/config.hpp"

namespace qf::experiments {

/// In-memory output files, written to disk by the runner.
class Artifacts {
 public:
  void add(const std::string& name, std::string bytes);
  const std::map<std::string, std::string>& files() const { return files_; }

 private:
  std::map<std::string, std::string> files_;
};

struct Verdict {
  std::string experiment;
  int criterion = 0;
  bool pass = false;
  std::string summary;  // one line
  json metrics = json::object();
  double seconds = 0.0;
};

struct RunContext {
  std::uint64_t seed = 0;
  std::optional<json> model;
  Artifacts artifacts;
};

using ExperimentFn = std::function<Verdict(ParamReader&, RunContext&)>;

struct ExperimentInfo {
  std::string name;
  int criterion;
  std::string doc;
  bool accepts_model;
  // Parameters that the acceptance driver may override.
  std::vector<std::string> overridable;
  ExperimentFn run;
};

// Alphabetized by name.
const std::vector<ExperimentInfo>& registry();

// Throws ExperimentUnknown.
const ExperimentInfo& find_experiment(const std::string& name);

/*!
 * Runs one experiment: checks the params strictly, fills ctx.artifacts and
 * returns the verdict with its wall-clock time.
 */
Verdict run_experiment(const ExperimentInfo& info, ParamReader& params, RunContext& ctx);

// Registration hooks implemented per experiment family.
void register_quantum_experiments(std::vector<ExperimentInfo>& out);
void register_qp_experiments(std::vector<ExperimentInfo>& out);
void register_classical_experiments(std::vector<ExperimentInfo>& out);

}  // namespace qf::experiments
