#include "radgas/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "radgas/errors.hpp"

namespace radgas {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
  write_atomic(dir_ / name, content);
  for (auto& f : files_) {
    if (f.first == name) {
      f.second = sha256_hex(content);
      return;
    }
  }
  files_.emplace_back(name, sha256_hex(content));
}

void ArtifactWriter::write_csv(const std::string& name, const std::string& csv,
                               const std::string& header_json) {
  write(name + ".csv", csv);
  write(name + ".json", header_json);
}

void ArtifactWriter::remove_stale(const std::string& name) {
  std::error_code ec;
  std::filesystem::remove(dir_ / name, ec);
}

void ArtifactWriter::write_manifest(const std::string& fields_json, double wall_seconds) {
  nlohmann::json m = nlohmann::json::parse(fields_json);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, hash] : files_) files.push_back({{"name", name}, {"sha256", hash}});
  m["files"] = files;
  m["wall_time_seconds"] = wall_seconds;
  write_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
}

}  // namespace radgas
