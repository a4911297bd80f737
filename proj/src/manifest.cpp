#include "mlurn/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mlurn::cli {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a64_hex(ss.str());
}

nlohmann::json manifest_json(const RunManifest& m, bool include_timestamp) {
  nlohmann::json j;
  j["tool"] = "mlurn";
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  j["config"] = m.config;
  j["input_digest"] = m.input_digest;
  if (include_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["created_utc"] = buf;
  }
  return j;
}

void write_manifest_sibling(const RunManifest& m, const std::string& out_path) {
  std::ofstream out(out_path + ".manifest.json");
  if (!out) throw std::invalid_argument("cannot write manifest next to " + out_path);
  out << manifest_json(m, true).dump(2) << "\n";
}

std::string manifest_comment(const RunManifest& m) {
  return "# manifest " + manifest_json(m, false).dump() + "\n";
}

}  // namespace mlurn::cli
