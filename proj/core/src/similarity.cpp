#include <fmt/format.h>

#include <algorithm>

#include "ckbvar/dialect_rules.hpp"
#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/tsv.hpp"

namespace ckbvar {

Wordlists Wordlists::from_tsv(std::string_view text) {
  const auto rows = parse_tsv(text);
  if (rows.empty()) throw Error(ErrorKind::kSchema, "wordlists need a header row");
  Wordlists lists;
  const auto& header = rows.front().fields;
  if (header.size() < 2) throw ParseError(rows.front().line, "wordlists need at least one variety");
  lists.varieties.assign(header.begin() + 1, header.end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) {
      throw Error(ErrorKind::kSchema, fmt::format("line {}: expected {} columns, found {}",
                                                  rows[r].line, header.size(), f.size()));
    }
    lists.ids.push_back(f[0]);
    std::vector<std::optional<std::string>> cells;
    for (std::size_t c = 1; c < f.size(); ++c) {
      const std::string& v = f[c];
      if (v.empty() || v == "-" || v == "✗") {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(normalize(v).text);
      }
    }
    lists.rows.push_back(std::move(cells));
  }
  return lists;
}

const Wordlists& Wordlists::builtin() {
  static const Wordlists lists = from_tsv(embedded_data("wordlists.tsv").value());
  return lists;
}

double SimilarityMatrix::at(std::string_view a, std::string_view b) const {
  auto index = [&](std::string_view name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) {
      throw Error(ErrorKind::kInvalidInput, "no variety '" + std::string(name) + "' in matrix");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };
  return values[index(a)][index(b)];
}

std::string SimilarityMatrix::to_csv() const {
  std::string out = "variety";
  for (const auto& l : labels) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    for (double v : values[i]) out += fmt::format(",{:.2f}", v);
    out += "\n";
  }
  return out;
}

SimilarityMatrix similarity_matrix(const Wordlists& lists) {
  const std::size_t n = lists.varieties.size();
  for (const auto& row : lists.rows) {
    if (row.size() != n) throw Error(ErrorKind::kSchema, "ragged wordlists");
  }
  SimilarityMatrix m;
  m.labels = lists.varieties;
  m.values.assign(n, std::vector<double>(n, 100.0));
  if (lists.rows.empty()) return m;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t same = 0;
      for (const auto& row : lists.rows) {
        if (row[a] == row[b]) ++same;
      }
      const double pct = 100.0 * static_cast<double>(same) / static_cast<double>(lists.rows.size());
      m.values[a][b] = m.values[b][a] = pct;
    }
  }
  return m;
}

}  // namespace ckbvar
