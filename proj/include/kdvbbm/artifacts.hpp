#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fftw3.h>
#include <json.hpp>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

inline constexpr const char* library_version = "0.1.0";

// Full-precision decimal rendering; round-trips any finite double.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// FNV-1a over raw bytes; used to fingerprint config files in the manifest.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Streams are opened in binary mode so artifacts keep LF line endings on
// every platform and byte-for-byte reruns stay comparable.
inline void write_text_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("write_text_file: cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw config_error("write_text_file: short write to " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("read_text_file: cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Row-oriented CSV builder: comma separators, '.' decimal point, one header
// row, LF endings, numbers at full %.17g precision. Cells are appended left
// to right; end_row() enforces the declared width.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw config_error("CsvWriter: need at least one column");
  }

  CsvWriter& put(double v) { return put_cell(format_g17(v)); }
  CsvWriter& put(std::size_t v) { return put_cell(std::to_string(v)); }
  CsvWriter& put(long v) { return put_cell(std::to_string(v)); }
  CsvWriter& put(const std::string& v) { return put_cell(v); }
  CsvWriter& put(const char* v) { return put_cell(v); }

  void end_row() {
    if (pending_.size() != columns_.size())
      throw shape_error("CsvWriter: row has " + std::to_string(pending_.size()) +
                        " cells, header has " + std::to_string(columns_.size()));
    rows_.push_back(std::move(pending_));
    pending_.clear();
  }

  std::size_t row_count() const { return rows_.size(); }

  std::string bytes() const {
    std::string out;
    append_line(out, columns_);
    for (const auto& row : rows_) append_line(out, row);
    return out;
  }

  void save(const std::filesystem::path& path) const { write_text_file(path, bytes()); }

 private:
  CsvWriter& put_cell(std::string cell) {
    if (pending_.size() >= columns_.size())
      throw shape_error("CsvWriter: more cells than columns in row " +
                        std::to_string(rows_.size()));
    pending_.push_back(std::move(cell));
    return *this;
  }

  static void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += escape(cells[i]);
    }
    out += '\n';
  }

  static std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }

  std::vector<std::string> columns_;
  std::vector<std::string> pending_;
  std::vector<std::vector<std::string>> rows_;
};

// Run manifest: everything needed to reproduce the artifacts (resolved
// config, seed, input fingerprint) plus bookkeeping that is allowed to vary
// between reruns (wall time). Key order is alphabetical by construction, so
// the serialization is stable.
inline nlohmann::json make_manifest(const std::string& command, std::uint64_t seed,
                                    std::uint64_t inputs_hash,
                                    const nlohmann::json& resolved_config,
                                    const std::string& status,
                                    const std::vector<std::string>& artifacts,
                                    double wall_time_ms) {
  nlohmann::json m;
  m["schema"] = 1;
  m["command"] = command;
  m["seed"] = seed;
  m["inputs_hash"] = hash_string(inputs_hash);
  m["versions"] = {{"kdvbbm", library_version}, {"fftw", std::string(fftw_version)}};
  m["wall_time_ms"] = wall_time_ms;
  m["status"] = status;
  m["artifacts"] = artifacts;
  m["config"] = resolved_config;
  return m;
}

inline void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest) {
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace kdvbbm
