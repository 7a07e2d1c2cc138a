#include "experiments/registry.hpp"

#include <algorithm>
#include <chrono>

#include "common/error.hpp"

namespace qf::experiments {

void Artifacts::add(const std::string& name, std::string bytes) {
  if (files_.contains(name)) fail(ErrorCode::kInvalidArgument, "duplicate artifact '" + name + "'");
  files_.emplace(name, std::move(bytes));
}

const std::vector<ExperimentInfo>& registry() {
  static const std::vector<ExperimentInfo> entries = [] {
    std::vector<ExperimentInfo> out;
    register_quantum_experiments(out);
    register_qp_experiments(out);
    register_classical_experiments(out);
    std::sort(out.begin(), out.end(),
              [](const ExperimentInfo& a, const ExperimentInfo& b) { return a.name < b.name; });
    return out;
  }();
  return entries;
}

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const ExperimentInfo& e : registry()) {
    if (e.name == name) return e;
  }
  fail(ErrorCode::kExperimentUnknown, "unknown experiment '" + name + "'; see `list`");
}

Verdict run_experiment(const ExperimentInfo& info, ParamReader& params, RunContext& ctx) {
  if (ctx.model && !info.accepts_model) {
    throw ConfigError(0, 0, "experiment '" + info.name + "' does not take a model");
  }
  const auto start = std::chrono::steady_clock::now();
  Verdict v = info.run(params, ctx);
  params.finish();
  v.experiment = info.name;
  v.criterion = info.criterion;
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

}  // namespace qf::experiments
