// Command-line front end. Links only the C API in libqfilter.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfilter/qfilter.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAcceptance = 4;

int exit_code_for(qf_status s) {
  switch (s) {
    case QF_E_CONFIG_PARSE:
    case QF_E_EXPERIMENT_UNKNOWN:
    case QF_E_IO:
    case QF_E_SYNTAX:
    case QF_E_INVALID_ARGUMENT:
    case QF_E_NULL_ARGUMENT:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

// Prints the last error as JSON on stderr and returns the exit code.
int report_error(qf_status s) {
  size_t needed = 0;
  qf_last_error_json(nullptr, 0, &needed);
  std::string buf(needed, '\0');
  if (qf_last_error_json(buf.data(), buf.size(), nullptr) == QF_OK) {
    buf.resize(needed - 1);
    std::cerr << buf << "\n";
  } else {
    std::cerr << "{\"error\":\"" << qf_status_name(s) << "\"}\n";
  }
  return exit_code_for(s);
}

// Two-call string retrieval.
template <class F>
std::string fetch(F&& call) {
  size_t needed = 0;
  call(nullptr, 0, &needed);
  std::string buf(needed, '\0');
  if (needed == 0 || call(buf.data(), buf.size(), nullptr) != QF_OK) return {};
  buf.resize(needed - 1);
  return buf;
}

int cmd_list() {
  const size_t n = qf_experiment_count();
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* doc = nullptr;
    int criterion = 0;
    qf_experiment_info(i, &name, &criterion, &doc);
    std::string padded = name;
    padded.resize(std::max<size_t>(padded.size() + 2, 26), ' ');
    std::cout << padded << "criterion " << (criterion < 10 ? " " : "") << criterion << "  " << doc << "\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& path, const std::optional<std::string>& output_dir) {
  qf_config* config = nullptr;
  if (const qf_status s = qf_config_load(path.c_str(), &config); s != QF_OK) return report_error(s);
  qf_run* run = nullptr;
  const qf_status s = qf_run_config(config, output_dir ? output_dir->c_str() : nullptr, 1, &run);
  qf_config_free(config);
  if (s != QF_OK) return report_error(s);
  std::cout << fetch([&](char* b, size_t c, size_t* n) { return qf_run_verdict_json(run, b, c, n); }) << "\n";
  std::cerr << "artifacts written to "
            << fetch([&](char* b, size_t c, size_t* n) { return qf_run_output_dir(run, b, c, n); }) << "\n";
  const bool pass = qf_run_pass(run) != 0;
  qf_run_free(run);
  return pass ? kExitOk : kExitAcceptance;
}

void on_progress(const char* experiment, int criterion, int pass, void*) {
  std::cerr << "  [" << (pass ? "pass" : "FAIL") << "] criterion " << criterion << " " << experiment << "\n";
}

int cmd_acceptance(const std::optional<std::string>& only, std::optional<std::uint64_t> seed,
                   std::optional<std::uint64_t> n_traj, bool perturb,
                   std::optional<std::string> output_dir, bool quiet) {
  std::string overrides = "{";
  auto add = [&overrides](const std::string& kv) {
    if (overrides.size() > 1) overrides += ",";
    overrides += kv;
  };
  if (only) {
    std::string escaped;
    for (char c : *only) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    add("\"only\":\"" + escaped + "\"");
  }
  if (seed) add("\"seed\":" + std::to_string(*seed));
  if (n_traj) add("\"n_traj\":" + std::to_string(*n_traj));
  if (perturb) add("\"perturb_lindblad_sign\":true");
  overrides += "}";

  if (!output_dir) {
    const char* env = std::getenv("QFILTER_OUTPUT_DIR");
    output_dir = (env != nullptr && *env != '\0') ? std::string(env) : std::string("out/acceptance");
  }

  qf_acceptance* report = nullptr;
  const qf_status s = qf_acceptance_run(overrides.c_str(), output_dir->c_str(),
                                        quiet ? nullptr : on_progress, nullptr, &report);
  if (s != QF_OK) return report_error(s);
  const size_t lines = qf_acceptance_line_count(report);
  for (size_t i = 0; i < lines; ++i) {
    std::cout << fetch([&](char* b, size_t c, size_t* n) {
      return qf_acceptance_line(report, i, nullptr, nullptr, b, c, n);
    }) << "\n";
  }
  const bool pass = qf_acceptance_pass(report) != 0;
  std::cout << (pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (verdict: " << *output_dir
            << "/acceptance.json)\n";
  qf_acceptance_free(report);
  return pass ? kExitOk : kExitAcceptance;
}

int cmd_ito_simplify(const std::string& expr) {
  size_t needed = 0;
  qf_status s = qf_ito_simplify(expr.c_str(), nullptr, 0, &needed);
  if (s != QF_OK && s != QF_E_BUFFER_TOO_SMALL) {
    int line = 0, column = 0;
    qf_last_error_location(&line, &column);
    std::cerr << expr << "\n" << std::string(static_cast<size_t>(column), ' ') << "^\n";
    return report_error(s);
  }
  std::string buf(needed, '\0');
  s = qf_ito_simplify(expr.c_str(), buf.data(), buf.size(), nullptr);
  if (s != QF_OK) return report_error(s);
  buf.resize(needed - 1);
  std::cout << buf << "\n";
  return kExitOk;
}

int cmd_ito_table() {
  std::cout << fetch([](char* b, size_t c, size_t* n) { return qf_ito_table(b, c, n); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum and classical filtering experiments"};
  app.set_version_flag("--version", std::string(qf_version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  std::string config_path;
  std::optional<std::string> run_output;
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output-dir", run_output, "artifact directory (overrides config)");

  auto* list = app.add_subcommand("list", "list registered experiments");

  auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
  std::optional<std::string> only;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n_traj;
  std::optional<std::string> acc_output;
  bool perturb = false;
  bool quiet = false;
  acc->add_option("--only", only, "experiment name or criterion number");
  acc->add_option("--seed", seed, "base seed");
  acc->add_option("--n-traj", n_traj, "trajectory count for ensemble experiments");
  acc->add_flag("--perturb-lindblad-sign", perturb, "negative control: flip the dissipator in the oracle");
  acc->add_option("-o,--output-dir", acc_output, "verdict directory");
  acc->add_flag("-q,--quiet", quiet, "no progress on stderr");

  auto* ito = app.add_subcommand("ito", "quantum Ito algebra");
  ito->require_subcommand(1);
  auto* simplify = ito->add_subcommand("simplify", "simplify an increment expression");
  std::string expr;
  simplify->add_option("expr", expr, "expression, e.g. 'dB.dB*'")->required();
  auto* table = ito->add_subcommand("table", "print the Ito multiplication table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return cmd_run(config_path, run_output);
  if (*list) return cmd_list();
  if (*acc) return cmd_acceptance(only, seed, n_traj, perturb, acc_output, quiet);
  if (*simplify) return cmd_ito_simplify(expr);
  if (*table) return cmd_ito_table();
  return kExitConfig;
}
