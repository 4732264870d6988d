#include "ckbvar/tsv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ckbvar/error.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<TsvRow> parse_tsv(std::string_view text) {
  std::vector<TsvRow> rows;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    TsvRow row;
    row.line = i + 1;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        row.fields.push_back(line.substr(start));
        break;
      }
      row.fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string decode_table_field(std::string_view field) {
  if (field == "∅") return {};
  if (!field.starts_with("U+")) return std::string(field);
  std::u32string out;
  std::istringstream parts{std::string(field)};
  std::string part;
  while (parts >> part) {
    if (!part.starts_with("U+")) {
      throw Error(ErrorKind::kSchema, "bad code point spec: " + std::string(field));
    }
    unsigned value = 0;
    auto [ptr, ec] =
        std::from_chars(part.data() + 2, part.data() + part.size(), value, 16);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorKind::kSchema, "bad code point spec: " + std::string(field));
    }
    out.push_back(static_cast<char32_t>(value));
  }
  return utf8::encode(out);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace ckbvar
