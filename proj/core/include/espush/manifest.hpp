#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace espush {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

struct ArtifactEntry {
  std::string name;  // relative to the run's output directory
  std::string hash;  // fnv1a64 of the file content, hex
  std::uint64_t bytes = 0;
};

// Written at the end of every CLI run; re-running with the recorded seed and
// config must reproduce every listed hash.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_echo;  // effective config as canonical JSON
  std::vector<std::string> inputs;
  std::vector<ArtifactEntry> outputs;
};

// Hashes out_dir/name and appends it to the manifest.
void record_output(RunManifest& m, const std::string& out_dir,
                   const std::string& name);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest load_manifest(const std::string& path);

}  // namespace espush
