#include "lcslab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lcslab/error.hpp"

namespace lcslab {

Json to_json(const BlockString& s) {
  return Json{{"initial", s.initial == Bit::Zero ? 0 : 1},
              {"blocks", s.blocks},
              {"rest", s.rest},
              {"truncated", s.truncated}};
}

BlockString block_string_from_json(const Json& j, int l) {
  BlockString s;
  s.l = l;
  try {
    if (!j.is_object() || j.size() != 4) throw LabError(ErrorKind::IoError, "block string needs exactly 4 fields");
    const int initial = j.at("initial").get<int>();
    if (initial != 0 && initial != 1) throw LabError(ErrorKind::IoError, "initial must be 0 or 1");
    s.initial = initial == 0 ? Bit::Zero : Bit::One;
    s.blocks = j.at("blocks").get<std::vector<int>>();
    s.rest = j.at("rest").get<int>();
    s.truncated = j.at("truncated").get<bool>();
  } catch (const Json::exception& e) {
    throw LabError(ErrorKind::IoError, std::string("malformed block string: ") + e.what());
  }
  s.validate();
  return s;
}

Json to_json(const TzrStats& s) { return Json{{"t", s.t}, {"z", s.z}, {"r", s.r}}; }

Json to_json(const ModStep& step) {
  auto index = [](const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); };
  return Json{{"step", step.step},
              {"kind", step.kind == StepKind::Tilde ? "tilde" : "half"},
              {"chosen_short_index", index(step.short_index)},
              {"chosen_long_index", index(step.long_index)}};
}

Json trace_to_json(std::span<const ModStep> trace) {
  Json out = Json::array();
  for (const auto& step : trace) out.push_back(to_json(step));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size())
    throw LabError(ErrorKind::MisalignedInput, "csv row has " + std::to_string(row.size()) + " cells, header has " +
                                                   std::to_string(header_.size()));
  rows_.push_back(std::move(row));
  return *this;
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_line(out, header_);
  for (const auto& row : rows_) append_line(out, row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw LabError(ErrorKind::IoError, "csv has no header");
  CsvTable table(split_line(lines[0]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_line(lines[i]);
    if (cells.size() != table.header().size())
      throw LabError(ErrorKind::IoError, "csv line " + std::to_string(i + 1) + " has the wrong number of cells");
    table.add_row(std::move(cells));
  }
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LabError(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw LabError(ErrorKind::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LabError(ErrorKind::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw LabError(ErrorKind::IoError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw LabError(ErrorKind::IoError, "cannot move output into " + path.string());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lcslab
