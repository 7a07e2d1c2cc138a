#include "experiments/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace qf::experiments {

namespace {

const std::set<std::string> kTopLevelKeys = {"experiment", "seed", "output_dir",
                                             "params", "model"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Offset of `"key"` used as an object key at or after `from`, or npos.
std::size_t locate_key(std::string_view text, const std::string& key, std::size_t from = 0) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = text.find(quoted, from);
  while (pos != std::string_view::npos) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() && is_space(text[after])) ++after;
    if (after < text.size() && text[after] == ':') return pos;
    pos = text.find(quoted, pos + 1);
  }
  return std::string_view::npos;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& message) {
  if (offset == std::string_view::npos) throw ConfigError(0, 0, message);
  const auto [line, col] = line_column(text, offset);
  throw ConfigError(line, col,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + message);
}

}  // namespace

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line x, column y: " prefix.
    if (const auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    fail_at(text, offset, "malformed JSON: " + what);
  }
  if (!j.is_object()) fail_at(text, 0, "config must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (!kTopLevelKeys.contains(key)) {
      fail_at(text, locate_key(text, key), "unknown key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  cfg.source = std::string(text);

  if (!j.contains("experiment") || !j["experiment"].is_string()) {
    fail_at(text, j.contains("experiment") ? locate_key(text, "experiment") : 0,
            "'experiment' must be a string naming a registered experiment");
  }
  cfg.experiment = j["experiment"].get<std::string>();

  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
    fail_at(text, j.contains("seed") ? locate_key(text, "seed") : 0,
            "'seed' must be a nonnegative integer");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string() || j["output_dir"].get<std::string>().empty()) {
      fail_at(text, locate_key(text, "output_dir"), "'output_dir' must be a nonempty string");
    }
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail_at(text, locate_key(text, "params"), "'params' must be an object");
    cfg.params = j["params"];
  }
  if (j.contains("model")) {
    if (!j["model"].is_object()) fail_at(text, locate_key(text, "model"), "'model' must be an object");
    cfg.model = j["model"];
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ParamReader::ParamReader(json params, std::string source)
    : params_(std::move(params)), source_(std::move(source)) {
  if (!params_.is_object()) throw ConfigError(0, 0, "params must be an object");
}

void ParamReader::reject(const std::string& key, const std::string& message) const {
  std::size_t offset = std::string_view::npos;
  if (!source_.empty()) {
    const std::size_t base = locate_key(source_, "params");
    offset = locate_key(source_, key, base == std::string_view::npos ? 0 : base);
  }
  fail_at(source_, offset, "params." + key + ": " + message);
}

const json* ParamReader::lookup(const std::string& key) {
  used_.insert(key);
  const auto it = params_.find(key);
  return it == params_.end() ? nullptr : &*it;
}

double ParamReader::number(const std::string& key, double fallback) {
  const json* v = lookup(key);
  if (v == nullptr) return fallback;
  if (!v->is_number() || !std::isfinite(v->get<double>())) reject(key, "expected a finite number");
  return v->get<double>();
}

double ParamReader::positive(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (!(x > 0.0)) reject(key, "must be positive");
  return x;
}

std::uint64_t ParamReader::count(const std::string& key, std::uint64_t fallback,
                                 std::uint64_t minimum) {
  const json* v = lookup(key);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer() || v->get<std::int64_t>() < 0) reject(key, "expected a nonnegative integer");
  const auto n = v->get<std::uint64_t>();
  if (n < minimum) reject(key, "must be at least " + std::to_string(minimum));
  return n;
}

bool ParamReader::flag(const std::string& key, bool fallback) {
  const json* v = lookup(key);
  if (v == nullptr) return fallback;
  if (!v->is_boolean()) reject(key, "expected true or false");
  return v->get<bool>();
}

std::vector<double> ParamReader::numbers(const std::string& key, std::vector<double> fallback) {
  const json* v = lookup(key);
  if (v == nullptr) return fallback;
  if (!v->is_array() || v->empty()) reject(key, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (const json& e : *v) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) reject(key, "expected finite numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::uint64_t> ParamReader::counts(const std::string& key,
                                               std::vector<std::uint64_t> fallback) {
  const json* v = lookup(key);
  if (v == nullptr) return fallback;
  if (!v->is_array() || v->empty()) reject(key, "expected a nonempty array of integers");
  std::vector<std::uint64_t> out;
  for (const json& e : *v) {
    if (!e.is_number_integer() || e.get<std::int64_t>() < 0) reject(key, "expected nonnegative integers");
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

void ParamReader::finish() const {
  for (const auto& [key, value] : params_.items()) {
    if (!used_.contains(key)) reject(key, "unknown parameter");
  }
}

}  // namespace qf::experiments
