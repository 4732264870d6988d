#include "ckbvar/orthography.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

namespace {

constexpr std::u32string_view kKurdishArabicLetters =
    U"ئابپتجچحخدرڕزژسشعغفڤقکگلڵمنهەوۆیێ";
constexpr std::u32string_view kKurdishLatinExtras = U"çêîşûłřḧẍÇÊÎŞÛŁŘḦẌ‘’";

bool is_known(char32_t c) {
  if (c >= 0x20 && c <= 0x7E) return true;
  if (c == utf8::kZwnj) return true;
  if (utf8::is_digit(c) || utf8::is_punctuation(c)) return true;
  return kKurdishArabicLetters.find(c) != std::u32string_view::npos ||
         kKurdishLatinExtras.find(c) != std::u32string_view::npos;
}

bool is_hyphen(char32_t c) { return c == U'-' || c == 0x2010 || c == 0x2011; }

bool is_word_core(char32_t c) {
  return !utf8::is_space(c) && !utf8::is_punctuation(c) && !utf8::is_apostrophe(c);
}

enum class CharClass { kSpace, kPunct, kWord };

CharClass classify(std::u32string_view s, std::size_t i) {
  const char32_t c = s[i];
  if (utf8::is_space(c)) return CharClass::kSpace;
  if (utf8::is_apostrophe(c) || is_hyphen(c)) {
    const bool inner = i > 0 && i + 1 < s.size() && is_word_core(s[i - 1]) &&
                       is_word_core(s[i + 1]);
    return inner ? CharClass::kWord : CharClass::kPunct;
  }
  if (utf8::is_punctuation(c)) return CharClass::kPunct;
  return CharClass::kWord;
}

struct Range {
  std::size_t begin;
  std::size_t end;
};

// Token ranges over code point indices.
std::vector<Range> token_ranges(std::u32string_view s) {
  std::vector<Range> out;
  std::size_t i = 0;
  while (i < s.size()) {
    CharClass cls = classify(s, i);
    if (cls == CharClass::kSpace) {
      ++i;
    } else if (cls == CharClass::kPunct) {
      out.push_back({i, i + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && classify(s, j) == CharClass::kWord) ++j;
      out.push_back({i, j});
      i = j;
    }
  }
  return out;
}

std::u32string collapse_whitespace(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t c : s) {
    if (utf8::is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// Byte offset of every code point index (size n + 1).
std::vector<std::size_t> byte_offsets(std::u32string_view s) {
  std::vector<std::size_t> offsets(s.size() + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    const std::size_t width = c < 0x80 ? 1 : c < 0x800 ? 2 : c < 0x10000 ? 3 : 4;
    offsets[i + 1] = offsets[i] + width;
  }
  return offsets;
}

}  // namespace

Script script_of(std::string_view text) {
  return utf8::has_arabic(utf8::decode(text)) ? Script::kArabic : Script::kLatin;
}

NormalizationTable NormalizationTable::from_tsv(std::string_view tsv) {
  NormalizationTable table;
  for (const TsvRow& row : parse_tsv(tsv)) {
    if (row.fields.size() < 2) {
      throw ParseError(row.line, "normalization row needs source and target");
    }
    std::u32string source = utf8::decode(decode_table_field(row.fields[0]));
    if (source.empty()) throw ParseError(row.line, "empty normalization source");
    Rule rule;
    rule.target = utf8::decode(decode_table_field(row.fields[1]));
    const std::string context = row.fields.size() > 2 ? row.fields[2] : "any";
    if (context == "any" || context.empty()) {
      rule.context = Context::kAny;
    } else if (context == "word_initial") {
      rule.context = Context::kWordInitial;
    } else if (context == "word_medial") {
      rule.context = Context::kWordMedial;
    } else if (context == "word_final") {
      rule.context = Context::kWordFinal;
    } else {
      throw ParseError(row.line, "unknown normalization context '" + context + "'");
    }
    table.longest_source_ = std::max(table.longest_source_, source.size());
    table.rules_[source].push_back(std::move(rule));
  }
  return table;
}

const NormalizationTable& NormalizationTable::builtin() {
  static const NormalizationTable table =
      from_tsv(embedded_data("normalization.tsv").value());
  return table;
}

bool NormalizationTable::blocked(char32_t c) const {
  auto it = rules_.find(std::u32string(1, c));
  if (it == rules_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [c](const Rule& r) {
    return r.context == Context::kAny && r.target != std::u32string(1, c);
  });
}

std::u32string NormalizationTable::apply(std::u32string_view text) const {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    const std::size_t max_len = std::min(longest_source_, text.size() - i);
    for (std::size_t len = max_len; len >= 1 && !matched; --len) {
      auto it = rules_.find(std::u32string(text.substr(i, len)));
      if (it == rules_.end()) continue;
      const bool at_start = i == 0 || !utf8::is_letter(text[i - 1]);
      const bool at_end = i + len >= text.size() || !utf8::is_letter(text[i + len]);
      for (const Rule& rule : it->second) {
        bool applies = false;
        switch (rule.context) {
          case Context::kAny: applies = true; break;
          case Context::kWordInitial: applies = at_start && !at_end; break;
          case Context::kWordMedial: applies = !at_start && !at_end; break;
          case Context::kWordFinal: applies = at_end && !at_start; break;
        }
        if (applies) {
          out += rule.target;
          i += len;
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(text[i++]);
  }
  return out;
}

NormalizedText normalize(std::string_view raw, const NormalizeOptions& options,
                         const NormalizationTable& table) {
  std::u32string text = collapse_whitespace(table.apply(utf8::decode(raw)));
  auto ranges = token_ranges(text);

  // Dropping a ZWNJ can reclassify a neighbouring hyphen, so repeat until stable.
  for (bool any_drop = true; any_drop;) {
    any_drop = false;
    std::vector<bool> drop(text.size(), false);
    for (const Range& r : ranges) {
      std::size_t b = r.begin;
      std::size_t e = r.end;
      while (b < e && text[b] == utf8::kZwnj) drop[b++] = any_drop = true;
      while (e > b && text[e - 1] == utf8::kZwnj) drop[--e] = any_drop = true;
      if (!options.keep_zwnj) {
        for (std::size_t k = b; k < e; ++k) {
          if (text[k] == utf8::kZwnj) drop[k] = any_drop = true;
        }
      }
    }
    if (any_drop) {
      std::u32string kept;
      kept.reserve(text.size());
      for (std::size_t k = 0; k < text.size(); ++k) {
        if (!drop[k]) kept.push_back(text[k]);
      }
      text = collapse_whitespace(kept);
      ranges = token_ranges(text);
    }
  }

  NormalizedText result;
  const auto offsets = byte_offsets(text);
  result.text = utf8::encode(text);
  result.token_spans.reserve(ranges.size());
  for (const Range& r : ranges) {
    result.token_spans.push_back({offsets[r.begin], offsets[r.end]});
  }
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (!is_known(text[k])) {
      result.warnings.push_back(
          {offsets[k], text[k], fmt::format("unknown character U+{:04X}",
                                            static_cast<unsigned>(text[k]))});
    }
  }
  return result;
}

std::vector<TokenSpan> token_spans(std::string_view text) {
  const std::u32string s = utf8::decode(text);
  const auto offsets = byte_offsets(s);
  std::vector<TokenSpan> spans;
  for (const Range& r : token_ranges(s)) {
    spans.push_back({offsets[r.begin], offsets[r.end]});
  }
  return spans;
}

std::vector<std::string> tokenize(const NormalizedText& text) {
  std::vector<std::string> tokens;
  tokens.reserve(text.token_count());
  for (std::size_t i = 0; i < text.token_count(); ++i) {
    tokens.emplace_back(text.token(i));
  }
  return tokens;
}

bool is_punctuation_token(std::string_view token) {
  const std::u32string s = utf8::decode(token);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char32_t c) {
    return utf8::is_punctuation(c) || utf8::is_apostrophe(c);
  });
}

}  // namespace ckbvar
