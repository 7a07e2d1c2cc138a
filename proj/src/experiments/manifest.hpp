#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "experiments/config.hpp"
#include "experiments/registry.hpp"

namespace qf::experiments {

std::string sha256_hex(std::string_view bytes);

/*!
 * Manifest JSON: config hash, seed, library versions, one entry per
 * artifact (name, bytes, sha256) and the verdict with its wall-clock time.
 */
json make_manifest(const ExperimentConfig& config, const Artifacts& artifacts,
                   const Verdict& verdict);

/*!
 * Writes every artifact into `dir` (created if needed) and then
 * manifest.json, last. Throws IoError.
 */
void write_run(const std::filesystem::path& dir, const ExperimentConfig& config,
               const Artifacts& artifacts, const Verdict& verdict);

json verdict_to_json(const Verdict& v);

// QFILTER_OUTPUT_DIR if set, else `configured`, else out/<experiment>.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& configured,
                                         const std::string& fallback_leaf);

}  // namespace qf::experiments
