#include "experiments/manifest.hpp"

#include <cstdlib>
#include <cstdio>

#include <Eigen/Core>
#include <openssl/evp.h>

#include "common/csv.hpp"
#include "common/error.hpp"

#ifndef QFILTER_VERSION
#define QFILTER_VERSION "0.0.0"
#endif

namespace qf::experiments {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIoError, "sha256: digest failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

json verdict_to_json(const Verdict& v) {
  return json{{"experiment", v.experiment},
              {"criterion", v.criterion},
              {"pass", v.pass},
              {"summary", v.summary},
              {"metrics", v.metrics},
              {"seconds", v.seconds}};
}

json make_manifest(const ExperimentConfig& config, const Artifacts& artifacts,
                   const Verdict& verdict) {
  json files = json::array();
  for (const auto& [name, bytes] : artifacts.files()) {
    files.push_back({{"name", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
  }
  const std::string eigen = std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION);
  const std::string nlohmann = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return json{{"experiment", config.experiment},
              {"config_sha256", sha256_hex(config.source)},
              {"seed", config.seed},
              {"versions", {{"qfilter", QFILTER_VERSION}, {"eigen", eigen}, {"nlohmann_json", nlohmann}}},
              {"files", files},
              {"verdict", verdict_to_json(verdict)},
              {"wall_clock_seconds", verdict.seconds}};
}

void write_run(const std::filesystem::path& dir, const ExperimentConfig& config,
               const Artifacts& artifacts, const Verdict& verdict) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [name, bytes] : artifacts.files()) {
    write_text_file((dir / name).string(), bytes);
  }
  write_text_file((dir / "manifest.json").string(),
                  make_manifest(config, artifacts, verdict).dump(2) + "\n");
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& configured,
                                         const std::string& fallback_leaf) {
  if (const char* env = std::getenv("QFILTER_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  if (configured) return *configured;
  return std::filesystem::path("out") / fallback_leaf;
}

}  // namespace qf::experiments
