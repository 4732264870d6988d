#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ckbvar {

struct TsvRow {
  std::size_t line = 0;  // 1-based
  std::vector<std::string> fields;
};

// Splits tab-separated text into rows. Blank lines and lines starting with '#'
// are skipped; a trailing '\r' is removed.
std::vector<TsvRow> parse_tsv(std::string_view text);

// Table fields may spell code points as "U+0640" (space-separated for
// sequences) so invisible characters stay readable. Anything else is taken
// literally. "∅" denotes the empty string.
std::string decode_table_field(std::string_view field);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Splits on '\n', dropping a final empty line and any '\r' before '\n'.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace ckbvar
