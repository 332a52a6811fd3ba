#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace circuitforge::cli {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

struct FileDigest {
  std::string path;
  std::string sha256;
};

/// Reproducibility record written next to a run's outputs. No timestamps or
/// host details, so two runs with the same inputs produce the same bytes.
struct Manifest {
  explicit Manifest(std::string sub) : subcommand(std::move(sub)) {}

  std::string subcommand;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::uint64_t seed = 1;

  /// Reads the file and records its digest. Throws IoFailure.
  void add_input(const std::string& path);
  void add_output(const std::string& name, std::string_view content);
  std::string to_json() const;
};

}  // namespace circuitforge::cli
