#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mlurn::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Attached to every output file. The argv vector is sufficient to reproduce
// the run bit-exactly (`mlurn rerun --manifest FILE`); the resolved config is
// for human readers. Timestamps live only in the sibling .manifest.json so
// that re-running a manifest reproduces identical CSV bytes.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // full original command line, without argv[0]
  nlohmann::json config;          // resolved settings, including the seed
  std::string input_digest;      // fnv1a-64 of the profile file, "" if none
};

std::string fnv1a64_hex(std::string_view bytes);
std::string digest_file(const std::string& path);

nlohmann::json manifest_json(const RunManifest& m, bool include_timestamp);

// Writes <out_path>.manifest.json (with timestamp).
void write_manifest_sibling(const RunManifest& m, const std::string& out_path);

// One '#' comment line for CSV headers; no timestamp, stable across reruns.
std::string manifest_comment(const RunManifest& m);

}  // namespace mlurn::cli
