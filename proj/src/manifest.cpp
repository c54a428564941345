#include "parp/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "parp/errors.hpp"
#include "parp/version.hpp"

namespace parp {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return std::string(buf);
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for digesting");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

}  // namespace

RunManifest make_manifest(const std::string& command,
                          const std::vector<std::string>& argv,
                          nlohmann::json config,
                          const std::vector<std::filesystem::path>& input_paths,
                          std::uint64_t seed) {
  RunManifest m;
  m.tool = kToolName;
  m.version = kToolVersion;
  m.command = command;
  m.argv = argv;
  m.config = std::move(config);
  for (const auto& path : input_paths) {
    m.inputs.push_back(RunManifest::Input{path.string(), file_digest(path)});
  }
  m.seed = seed;
  m.created_utc = utc_now();
  return m;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const RunManifest::Input& in : m.inputs) {
    inputs.push_back({{"path", in.path}, {"digest_fnv1a64", in.digest}});
  }
  return nlohmann::json{{"schema_version", 1},
                        {"tool", m.tool},
                        {"version", m.version},
                        {"command", m.command},
                        {"argv", m.argv},
                        {"config", m.config},
                        {"inputs", inputs},
                        {"seed", m.seed},
                        {"created_utc", m.created_utc}};
}

RunManifest parse_manifest(const nlohmann::json& doc) {
  try {
    RunManifest m;
    m.tool = doc.at("tool").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    for (const auto& a : doc.at("argv")) {
      m.argv.push_back(a.get<std::string>());
    }
    m.config = doc.value("config", nlohmann::json::object());
    for (const auto& in : doc.value("inputs", nlohmann::json::array())) {
      m.inputs.push_back(RunManifest::Input{
          in.at("path").get<std::string>(),
          in.at("digest_fnv1a64").get<std::string>()});
    }
    m.seed = doc.value("seed", std::uint64_t{0});
    m.created_utc = doc.value("created_utc", std::string{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  if (std::filesystem::is_directory(output)) {
    return output / "manifest.json";
  }
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& output,
                    const RunManifest& manifest) {
  const auto path = manifest_path_for(output);
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write manifest '" + path.string() + "'");
  }
  out << manifest_to_json(manifest).dump(2) << "\n";
}

}  // namespace parp
