#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lcslab/block_model.hpp"
#include "lcslab/modification.hpp"

namespace lcslab {

using Json = nlohmann::json;

/// {initial, blocks, rest, truncated}; l is not stored.
Json to_json(const BlockString& s);
/// Throws IoError on a malformed document and whatever BlockString::validate throws.
BlockString block_string_from_json(const Json& j, int l);

Json to_json(const TzrStats& s);
Json to_json(const ModStep& step);
Json trace_to_json(std::span<const ModStep> trace);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

// Comma separated, header row, LF endings. Cells are written as given, so
// callers must not pass commas or quotes.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Reads a CSV produced by CsvTable (or any unquoted CSV). Tolerates CRLF.
CsvTable parse_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it into place. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Pretty JSON with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace lcslab
