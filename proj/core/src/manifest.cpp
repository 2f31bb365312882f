#include "espush/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace espush {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<std::uint8_t>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void record_output(RunManifest& m, const std::string& out_dir,
                   const std::string& name) {
  const std::string path = out_dir + "/" + name;
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("missing output file " + path);
  const auto size = static_cast<std::uint64_t>(in.tellg());
  in.close();
  m.outputs.push_back({name, hash_hex(fnv1a64_file(path)), size});
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const ArtifactEntry& e : m.outputs) {
    outputs.push_back(
        {{"name", e.name}, {"fnv1a64", e.hash}, {"bytes", e.bytes}});
  }
  nlohmann::json j{{"command", m.command},
                   {"seed", m.seed},
                   {"config", nlohmann::json::parse(
                                  m.config_echo.empty() ? "{}" : m.config_echo)},
                   {"inputs", m.inputs},
                   {"outputs", outputs}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config_echo = j.at("config").dump();
  m.inputs = j.at("inputs").get<std::vector<std::string>>();
  for (const nlohmann::json& e : j.at("outputs")) {
    m.outputs.push_back({e.at("name").get<std::string>(),
                         e.at("fnv1a64").get<std::string>(),
                         e.at("bytes").get<std::uint64_t>()});
  }
  return m;
}

}  // namespace espush
