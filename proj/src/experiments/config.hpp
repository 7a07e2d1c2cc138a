#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qf::experiments {

using nlohmann::json;

/*!
 * Parsed run configuration. The file is a single JSON object:
 *
 *   {
 *     "experiment": "qubit-decay-filter",   // required, registry name
 *     "seed": 7,                            // required, unsigned integer
 *     "output_dir": "out/qubit",            // optional
 *     "params": { ... },                    // optional, experiment specific
 *     "model": { "dim": 2, "L": ... }       // optional, quantum experiments
 *   }
 *
 * Unknown keys at any level are rejected with their line and column.
 */
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::optional<std::string> output_dir;
  json params = json::object();
  std::optional<json> model;
  std::string source;  // raw text, hashed into the manifest
};

// Throws ConfigError (with 1-based line/column) on malformed input.
ExperimentConfig parse_config(std::string_view text);

// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

// 1-based line/column of a byte offset.
std::pair<int, int> line_column(std::string_view text, std::size_t offset);

/*!
 * Reads experiment parameters from a JSON object, tracking which keys were
 * consumed; finish() rejects the rest. Locations in errors refer to the
 * original config text when it is available.
 */
class ParamReader {
 public:
  ParamReader(json params, std::string source = {});

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  std::uint64_t count(const std::string& key, std::uint64_t fallback,
                      std::uint64_t minimum = 1);
  bool flag(const std::string& key, bool fallback);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
  std::vector<std::uint64_t> counts(const std::string& key,
                                    std::vector<std::uint64_t> fallback);

  // Throws ConfigError naming the first key that was never read.
  void finish() const;

  [[noreturn]] void reject(const std::string& key, const std::string& message) const;

 private:
  const json* lookup(const std::string& key);

  json params_;
  std::string source_;
  std::set<std::string> used_;
};

}  // namespace qf::experiments
