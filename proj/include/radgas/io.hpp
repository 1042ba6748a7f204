#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace radgas {

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

// Round-trip decimal rendering used in every CSV cell ("%.17g").
std::string format_double(double v);

// Writes `content` to a sibling temporary file and renames it over `path`,
// so readers see either the old or the new file, never a torn one.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Collects the artifacts of one run and renders the manifest.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  void write(const std::string& name, const std::string& content);
  // name.csv plus name.json holding `header_json`.
  void write_csv(const std::string& name, const std::string& csv, const std::string& header_json);
  // Removes a stale file from a previous run (e.g. an old "ABORTED" marker).
  void remove_stale(const std::string& name);

  // manifest.json: the listed artifacts with content hashes, plus `fields`
  // (a JSON object rendered by the caller) and the wall time in seconds.
  void write_manifest(const std::string& fields_json, double wall_seconds);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;  // name, sha256
};

}  // namespace radgas
