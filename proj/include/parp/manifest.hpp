#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace parp {

// FNV-1a 64-bit content digest; identifies inputs in run manifests.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);
std::string file_digest(const std::filesystem::path& path);

// Record of one CLI run: the resolved command, configuration, input
// digests and seed. Re-running the recorded command reproduces the output
// files byte for byte (the manifest itself carries a timestamp and is
// written alongside outputs, never into them).
struct RunManifest {
  std::string tool;
  std::string version;
  std::string command;             // subcommand path, e.g. "prompt infer"
  std::vector<std::string> argv;   // full invocation, program name omitted
  nlohmann::json config;           // resolved parameters
  struct Input {
    std::string path;
    std::string digest;
  };
  std::vector<Input> inputs;
  std::uint64_t seed = 0;
  std::string created_utc;
};

RunManifest make_manifest(const std::string& command,
                          const std::vector<std::string>& argv,
                          nlohmann::json config,
                          const std::vector<std::filesystem::path>& input_paths,
                          std::uint64_t seed = 0);

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest parse_manifest(const nlohmann::json& doc);

// Writes <output>.manifest.json next to an output file (or manifest.json
// inside an output directory).
std::filesystem::path manifest_path_for(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& output,
                    const RunManifest& manifest);

}  // namespace parp
