#include "qfilter/qfilter.h"

#include <cstring>
#include <new>
#include <string>

#include "common/error.hpp"
#include "experiments/acceptance.hpp"
#include "experiments/config.hpp"
#include "experiments/manifest.hpp"
#include "experiments/registry.hpp"
#include "ito/parser.hpp"
#include "ito/table.hpp"
#include "slh/operators.hpp"

namespace ex = qf::experiments;

struct qf_config {
  ex::ExperimentConfig config;
};

struct qf_run {
  ex::Verdict verdict;
  ex::Artifacts artifacts;
  std::string output_dir;
  std::string verdict_json;
};

struct qf_acceptance {
  ex::AcceptanceReport report;
  std::vector<std::string> lines;
  std::vector<qf::experiments::CriterionVerdict> criteria;
  std::string json;
};

struct qf_model {
  qf::slh::SLHModel model;
};

namespace {

struct LastError {
  qf_status status = QF_OK;
  std::string name;
  std::string message;
  int line = 0;
  int column = 0;
};

thread_local LastError g_last_error;

qf_status record(qf_status status, std::string name, std::string message, int line = 0,
                 int column = 0) {
  g_last_error = {status, std::move(name), std::move(message), line, column};
  return status;
}

template <class F>
qf_status guarded(F&& f) {
  try {
    f();
    return QF_OK;
  } catch (const qf::ConfigError& e) {
    return record(QF_E_CONFIG_PARSE, "ConfigParseError", e.what(), e.line(), e.column());
  } catch (const qf::SyntaxError& e) {
    return record(QF_E_SYNTAX, "SyntaxError", e.what() + std::string(" (expected ") + e.expected() + ")",
                  0, static_cast<int>(e.position()));
  } catch (const qf::Error& e) {
    return record(static_cast<qf_status>(e.code()), std::string(qf::error_name(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(QF_E_INTERNAL, "Internal", "out of memory");
  } catch (const std::exception& e) {
    return record(QF_E_INTERNAL, "Internal", e.what());
  }
}

qf_status null_argument(const char* what) {
  return record(QF_E_NULL_ARGUMENT, "NullArgument", std::string(what) + " must not be NULL");
}

qf_status copy_out(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  const size_t size = s.size() + 1;
  if (needed != nullptr) *needed = size;
  if (buf == nullptr || capacity < size) {
    if (buf == nullptr && capacity == 0) return QF_E_BUFFER_TOO_SMALL;
    return record(QF_E_BUFFER_TOO_SMALL, "BufferTooSmall",
                  "buffer holds " + std::to_string(capacity) + " bytes, " + std::to_string(size) + " needed");
  }
  std::memcpy(buf, s.c_str(), size);
  return QF_OK;
}

qf::Operator read_matrix(const double* data, Eigen::Index dim) {
  qf::Operator m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const size_t k = 2 * static_cast<size_t>(r * dim + c);
      m(r, c) = qf::Complex(data[k], data[k + 1]);
    }
  }
  return m;
}

void write_matrix(const qf::Operator& m, double* out) {
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const size_t k = 2 * static_cast<size_t>(r * dim + c);
      out[k] = m(r, c).real();
      out[k + 1] = m(r, c).imag();
    }
  }
}

}  // namespace

extern "C" {

const char* qf_version(void) { return QFILTER_VERSION; }

const char* qf_status_name(qf_status status) {
  switch (status) {
    case QF_OK: return "Ok";
    case QF_E_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case QF_E_NULL_ARGUMENT: return "NullArgument";
    case QF_E_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 24) return qf::error_name(static_cast<qf::ErrorCode>(code)).data();
  return "Unknown";
}

const char* qf_last_error_message(void) { return g_last_error.message.c_str(); }

void qf_last_error_location(int* line, int* column) {
  if (line != nullptr) *line = g_last_error.line;
  if (column != nullptr) *column = g_last_error.column;
}

qf_status qf_last_error_json(char* buf, size_t capacity, size_t* needed) {
  nlohmann::json j{{"error", g_last_error.name},
                   {"code", static_cast<int>(g_last_error.status)},
                   {"message", g_last_error.message}};
  if (g_last_error.line > 0 || g_last_error.column > 0) {
    j["line"] = g_last_error.line;
    j["column"] = g_last_error.column;
  }
  // Do not let a too-small buffer overwrite the error being reported.
  const std::string s = j.dump();
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr || capacity < s.size() + 1) return QF_E_BUFFER_TOO_SMALL;
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return QF_OK;
}

size_t qf_experiment_count(void) { return ex::registry().size(); }

qf_status qf_experiment_info(size_t index, const char** name, int* criterion, const char** doc) {
  const auto& reg = ex::registry();
  if (index >= reg.size()) {
    return record(QF_E_INVALID_ARGUMENT, "InvalidArgument", "experiment index out of range");
  }
  if (name != nullptr) *name = reg[index].name.c_str();
  if (criterion != nullptr) *criterion = reg[index].criterion;
  if (doc != nullptr) *doc = reg[index].doc.c_str();
  return QF_OK;
}

qf_status qf_config_parse(const char* text, qf_config** out) {
  if (text == nullptr || out == nullptr) return null_argument("text and out");
  *out = nullptr;
  return guarded([&] { *out = new qf_config{ex::parse_config(text)}; });
}

qf_status qf_config_load(const char* path, qf_config** out) {
  if (path == nullptr || out == nullptr) return null_argument("path and out");
  *out = nullptr;
  return guarded([&] { *out = new qf_config{ex::load_config(path)}; });
}

qf_status qf_config_experiment(const qf_config* config, char* buf, size_t capacity, size_t* needed) {
  if (config == nullptr) return null_argument("config");
  return copy_out(config->config.experiment, buf, capacity, needed);
}

uint64_t qf_config_seed(const qf_config* config) { return config == nullptr ? 0 : config->config.seed; }

void qf_config_free(qf_config* config) { delete config; }

qf_status qf_run_config(const qf_config* config, const char* output_dir, int write, qf_run** out) {
  if (config == nullptr || out == nullptr) return null_argument("config and out");
  *out = nullptr;
  return guarded([&] {
    const ex::ExperimentConfig& cfg = config->config;
    const ex::ExperimentInfo& info = ex::find_experiment(cfg.experiment);
    auto run = std::make_unique<qf_run>();
    ex::ParamReader params(cfg.params, cfg.source);
    ex::RunContext ctx;
    ctx.seed = cfg.seed;
    ctx.model = cfg.model;
    run->verdict = ex::run_experiment(info, params, ctx);
    run->artifacts = std::move(ctx.artifacts);
    run->verdict_json = ex::verdict_to_json(run->verdict).dump(2);
    if (write != 0) {
      const std::filesystem::path dir =
          output_dir != nullptr ? std::filesystem::path(output_dir)
                                : ex::resolve_output_dir(cfg.output_dir, cfg.experiment);
      ex::write_run(dir, cfg, run->artifacts, run->verdict);
      run->output_dir = dir.string();
    }
    *out = run.release();
  });
}

int qf_run_pass(const qf_run* run) { return run != nullptr && run->verdict.pass ? 1 : 0; }

qf_status qf_run_output_dir(const qf_run* run, char* buf, size_t capacity, size_t* needed) {
  if (run == nullptr) return null_argument("run");
  return copy_out(run->output_dir, buf, capacity, needed);
}

qf_status qf_run_verdict_json(const qf_run* run, char* buf, size_t capacity, size_t* needed) {
  if (run == nullptr) return null_argument("run");
  return copy_out(run->verdict_json, buf, capacity, needed);
}

size_t qf_run_artifact_count(const qf_run* run) {
  return run == nullptr ? 0 : run->artifacts.files().size();
}

qf_status qf_run_artifact(const qf_run* run, size_t index, const char** name, const char** bytes,
                          size_t* size) {
  if (run == nullptr) return null_argument("run");
  const auto& files = run->artifacts.files();
  if (index >= files.size()) {
    return record(QF_E_INVALID_ARGUMENT, "InvalidArgument", "artifact index out of range");
  }
  auto it = files.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(index));
  if (name != nullptr) *name = it->first.c_str();
  if (bytes != nullptr) *bytes = it->second.data();
  if (size != nullptr) *size = it->second.size();
  return QF_OK;
}

void qf_run_free(qf_run* run) { delete run; }

qf_status qf_acceptance_run(const char* overrides_json, const char* output_dir,
                            qf_progress_fn progress, void* user, qf_acceptance** out) {
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ex::AcceptanceOptions options;
    if (overrides_json != nullptr && *overrides_json != '\0') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(overrides_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw qf::ConfigError(0, static_cast<int>(e.byte), std::string("overrides: ") + e.what());
      }
      options = ex::acceptance_options_from_json(j);
    }
    auto report = std::make_unique<qf_acceptance>();
    report->report = ex::run_acceptance(options, [&](const ex::Verdict& v) {
      if (progress != nullptr) progress(v.experiment.c_str(), v.criterion, v.pass ? 1 : 0, user);
    });
    report->lines = ex::criterion_lines(report->report);
    report->criteria = report->report.criteria();
    report->json = report->report.to_json().dump(2);
    if (output_dir != nullptr) ex::write_acceptance(output_dir, report->report);
    *out = report.release();
  });
}

int qf_acceptance_pass(const qf_acceptance* report) {
  return report != nullptr && report->report.pass() ? 1 : 0;
}

size_t qf_acceptance_line_count(const qf_acceptance* report) {
  return report == nullptr ? 0 : report->lines.size();
}

qf_status qf_acceptance_line(const qf_acceptance* report, size_t index, int* criterion, int* pass,
                             char* buf, size_t capacity, size_t* needed) {
  if (report == nullptr) return null_argument("report");
  if (index >= report->lines.size()) {
    return record(QF_E_INVALID_ARGUMENT, "InvalidArgument", "line index out of range");
  }
  if (criterion != nullptr) *criterion = report->criteria[index].criterion;
  if (pass != nullptr) *pass = report->criteria[index].pass ? 1 : 0;
  return copy_out(report->lines[index], buf, capacity, needed);
}

qf_status qf_acceptance_json(const qf_acceptance* report, char* buf, size_t capacity, size_t* needed) {
  if (report == nullptr) return null_argument("report");
  return copy_out(report->json, buf, capacity, needed);
}

void qf_acceptance_free(qf_acceptance* report) { delete report; }

qf_status qf_ito_simplify(const char* expr, char* buf, size_t capacity, size_t* needed) {
  if (expr == nullptr) return null_argument("expr");
  std::string result;
  const qf_status s = guarded([&] { result = qf::ito::to_string(qf::ito::simplify(qf::ito::parse_ito_expr(expr))); });
  if (s != QF_OK) return s;
  return copy_out(result, buf, capacity, needed);
}

qf_status qf_ito_table(char* buf, size_t capacity, size_t* needed) {
  std::string table;
  const qf_status s = guarded([&] { table = qf::ito::render_table(); });
  if (s != QF_OK) return s;
  return copy_out(table, buf, capacity, needed);
}

qf_status qf_model_from_json(const char* json, qf_model** out) {
  if (json == nullptr || out == nullptr) return null_argument("json and out");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw qf::ConfigError(0, static_cast<int>(e.byte), std::string("model: ") + e.what());
    }
    *out = new qf_model{qf::slh::model_from_json(j)};
  });
}

size_t qf_model_dim(const qf_model* model) {
  return model == nullptr ? 0 : static_cast<size_t>(model->model.dim());
}

qf_status qf_model_lindblad(const qf_model* model, const double* x, double* out) {
  if (model == nullptr || x == nullptr || out == nullptr) return null_argument("model, x and out");
  return guarded([&] {
    write_matrix(qf::slh::lindblad_generator(model->model, read_matrix(x, model->model.dim())), out);
  });
}

qf_status qf_model_master(const qf_model* model, const double* rho, double* out) {
  if (model == nullptr || rho == nullptr || out == nullptr) return null_argument("model, rho and out");
  return guarded([&] {
    write_matrix(qf::slh::adjoint_generator(model->model, read_matrix(rho, model->model.dim())), out);
  });
}

void qf_model_free(qf_model* model) { delete model; }

}  // extern "C"
