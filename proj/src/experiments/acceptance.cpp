#include "experiments/acceptance.hpp"

#include <algorithm>
#include <charconv>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "experiments/manifest.hpp"

namespace qf::experiments {

AcceptanceOptions acceptance_options_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError(0, 0, "acceptance overrides must be a JSON object");
  AcceptanceOptions o;
  for (const auto& [key, value] : j.items()) {
    if (key == "only") {
      if (!value.is_string()) throw ConfigError(0, 0, "only: expected a string");
      o.only = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ConfigError(0, 0, "seed: expected a nonnegative integer");
      }
      o.seed = value.get<std::uint64_t>();
    } else if (key == "n_traj") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 2) {
        throw ConfigError(0, 0, "n_traj: expected an integer >= 2");
      }
      o.n_traj = value.get<std::uint64_t>();
    } else if (key == "perturb_lindblad_sign") {
      if (!value.is_boolean()) throw ConfigError(0, 0, "perturb_lindblad_sign: expected true or false");
      o.perturb_lindblad_sign = value.get<bool>();
    } else {
      throw ConfigError(0, 0, "unknown acceptance override '" + key + "'");
    }
  }
  return o;
}

std::vector<const ExperimentInfo*> select_experiments(const std::optional<std::string>& only) {
  std::vector<const ExperimentInfo*> out;
  if (!only || only->empty()) {
    for (const ExperimentInfo& e : registry()) out.push_back(&e);
    return out;
  }
  int criterion = 0;
  const auto [ptr, ec] = std::from_chars(only->data(), only->data() + only->size(), criterion);
  if (ec == std::errc() && ptr == only->data() + only->size()) {
    for (const ExperimentInfo& e : registry()) {
      if (e.criterion == criterion) out.push_back(&e);
    }
    if (out.empty()) {
      fail(ErrorCode::kExperimentUnknown, "no experiment covers criterion " + *only);
    }
    return out;
  }
  out.push_back(&find_experiment(*only));
  return out;
}

bool AcceptanceReport::pass() const {
  return !verdicts.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::vector<CriterionVerdict> AcceptanceReport::criteria() const {
  std::vector<CriterionVerdict> out;
  for (int c = 1; c <= kCriterionCount; ++c) {
    CriterionVerdict cv;
    cv.criterion = c;
    cv.pass = true;
    for (const Verdict& v : verdicts) {
      if (v.criterion == c) {
        cv.experiments.push_back(&v);
        cv.pass = cv.pass && v.pass;
      }
    }
    if (!cv.experiments.empty()) out.push_back(std::move(cv));
  }
  return out;
}

json AcceptanceReport::to_json() const {
  json crit = json::array();
  for (const CriterionVerdict& c : criteria()) {
    json names = json::array();
    for (const Verdict* v : c.experiments) names.push_back(v->experiment);
    crit.push_back({{"criterion", c.criterion}, {"pass", c.pass}, {"experiments", names}});
  }
  json exps = json::array();
  for (const Verdict& v : verdicts) exps.push_back(verdict_to_json(v));
  json overrides = {{"seed", options.seed}, {"perturb_lindblad_sign", options.perturb_lindblad_sign}};
  if (options.only) overrides["only"] = *options.only;
  if (options.n_traj) overrides["n_traj"] = *options.n_traj;
  return json{{"pass", pass()}, {"overrides", overrides}, {"criteria", crit}, {"experiments", exps}};
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options,
                                const std::function<void(const Verdict&)>& progress) {
  AcceptanceReport report;
  report.options = options;
  for (const ExperimentInfo* info : select_experiments(options.only)) {
    json params = json::object();
    auto allows = [info](const char* key) {
      return std::find(info->overridable.begin(), info->overridable.end(), key) != info->overridable.end();
    };
    if (options.n_traj && allows("n_traj")) params["n_traj"] = *options.n_traj;
    if (options.perturb_lindblad_sign && allows("perturb_lindblad_sign")) {
      params["perturb_lindblad_sign"] = true;
    }
    ParamReader reader(params);
    RunContext ctx;
    ctx.seed = options.seed;
    Verdict v;
    try {
      v = run_experiment(*info, reader, ctx);
    } catch (const Error& e) {
      v.experiment = info->name;
      v.criterion = info->criterion;
      v.pass = false;
      v.summary = std::string("error ") + std::string(error_name(e.code())) + ": " + e.what();
      v.metrics = {{"error", error_name(e.code())}, {"message", e.what()}};
    }
    if (progress) progress(v);
    report.verdicts.push_back(std::move(v));
    report.artifacts.push_back(std::move(ctx.artifacts));
  }
  return report;
}

std::vector<std::string> criterion_lines(const AcceptanceReport& report) {
  std::vector<std::string> lines;
  for (const CriterionVerdict& c : report.criteria()) {
    std::string line = std::string(c.pass ? "PASS" : "FAIL") + "  criterion " +
                       (c.criterion < 10 ? " " : "") + std::to_string(c.criterion) + "  ";
    for (std::size_t i = 0; i < c.experiments.size(); ++i) {
      const Verdict& v = *c.experiments[i];
      if (i > 0) line += " | ";
      line += v.experiment + (v.pass ? "" : " [FAIL]") + ": " + v.summary;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_acceptance(const std::filesystem::path& dir, const AcceptanceReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create '" + dir.string() + "': " + ec.message());
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    const std::filesystem::path sub = dir / report.verdicts[i].experiment;
    std::filesystem::create_directories(sub, ec);
    if (ec) fail(ErrorCode::kIoError, "cannot create '" + sub.string() + "': " + ec.message());
    for (const auto& [name, bytes] : report.artifacts[i].files()) {
      write_text_file((sub / name).string(), bytes);
    }
  }
  write_text_file((dir / "acceptance.json").string(), report.to_json().dump(2) + "\n");
}

}  // namespace qf::experiments
