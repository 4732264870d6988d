#include <algorithm>
#include <deque>

#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/orthography.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

namespace {

char32_t to_lower_latin(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c - U'A' + U'a';
  switch (c) {
    case U'Ç': return U'ç';
    case U'Ê': return U'ê';
    case U'Î': return U'î';
    case U'Ş': return U'ş';
    case U'Û': return U'û';
    case U'Ł': return U'ł';
    case U'Ř': return U'ř';
    case U'Ḧ': return U'ḧ';
    case U'Ẍ': return U'ẍ';
    default: return c;
  }
}

int sonority(std::u32string_view latin) {
  if (latin.size() != 1) return 1;
  switch (latin[0]) {
    case U'w': case U'y':
      return 5;
    case U'l': case U'ł': case U'r': case U'ř':
      return 4;
    case U'm': case U'n':
      return 3;
    case U'f': case U'h': case U'ḧ': case U'j': case U's': case U'ş':
    case U'v': case U'x': case U'ẍ': case U'z':
      return 2;
    default:
      return 1;
  }
}

bool is_glide(std::u32string_view latin) { return latin == U"w" || latin == U"y"; }

struct Unit {
  std::u32string latin;
  bool vowel = false;
};

class Syllabifier {
 public:
  explicit Syllabifier(std::u32string_view epenthetic) : epenthetic_(epenthetic) {}

  std::u32string run(const std::vector<Unit>& units) const {
    std::vector<std::size_t> vowels;
    for (std::size_t k = 0; k < units.size(); ++k) {
      if (units[k].vowel) vowels.push_back(k);
    }
    std::u32string out;
    if (vowels.empty()) {
      out += cluster(slice(units, 0, units.size()), false, false);
      return out;
    }
    out += cluster(slice(units, 0, vowels.front()), false, true);
    for (std::size_t v = 0; v < vowels.size(); ++v) {
      out += units[vowels[v]].latin;
      const std::size_t end = v + 1 < vowels.size() ? vowels[v + 1] : units.size();
      out += cluster(slice(units, vowels[v] + 1, end), true, v + 1 < vowels.size());
    }
    return out;
  }

 private:
  static std::deque<std::u32string> slice(const std::vector<Unit>& units,
                                          std::size_t begin, std::size_t end) {
    std::deque<std::u32string> out;
    for (std::size_t k = begin; k < end; ++k) out.push_back(units[k].latin);
    return out;
  }

  std::u32string cluster(std::deque<std::u32string> rest, bool has_prev,
                         bool has_next) const {
    std::deque<std::u32string> onset;
    if (has_next && !rest.empty()) {
      onset.push_front(rest.back());
      rest.pop_back();
      if (onset.front() == U"w" && !rest.empty() && rest.back() == U"x") {
        onset.push_front(rest.back());
        rest.pop_back();
      }
    }
    std::u32string out;
    if (!has_prev && !rest.empty()) {
      out += rest.front() + epenthetic_;
      rest.pop_front();
    }
    bool ends_in_consonant = false;
    std::u32string last;
    while (!rest.empty()) {
      last = rest.front();
      out += last;
      rest.pop_front();
      if (!rest.empty() && sonority(last) > sonority(rest.front())) {
        last = rest.front();
        out += last;
        rest.pop_front();
      }
      ends_in_consonant = true;
      if (!rest.empty()) out += epenthetic_;
    }
    if (ends_in_consonant && !onset.empty() && !is_glide(onset.front()) &&
        sonority(last) < sonority(onset.front())) {
      out += epenthetic_;
    }
    for (const auto& u : onset) out += u;
    return out;
  }

  std::u32string epenthetic_;
};

}  // namespace

TransliterationTable TransliterationTable::from_tsv(std::string_view tsv) {
  TransliterationTable table;
  for (const TsvRow& row : parse_tsv(tsv)) {
    if (row.fields.size() < 3) {
      throw ParseError(row.line, "transliteration row needs arabic, latin, context");
    }
    const std::u32string arabic = utf8::decode(decode_table_field(row.fields[0]));
    const std::u32string latin = utf8::decode(decode_table_field(row.fields[1]));
    const std::string& context = row.fields[2];
    if (latin.empty()) throw ParseError(row.line, "empty latin grapheme");
    if (context == "epenthetic") {
      if (!arabic.empty()) throw ParseError(row.line, "epenthetic row must have ∅ arabic");
      table.epenthetic_ = latin;
      continue;
    }
    if (arabic.empty()) throw ParseError(row.line, "empty arabic grapheme");
    if (context == "vowel" || context == "consonant") {
      ArabicEntry& e = table.arabic_[arabic];
      e.latin = latin;
      e.kind = context == "vowel" ? Kind::kVowel : Kind::kConsonant;
      table.latin_.emplace(latin, arabic);
    } else if (context == "glide") {
      ArabicEntry& e = table.arabic_[arabic];
      e.latin = latin;
      e.kind = Kind::kGlide;
      table.latin_.emplace(latin, arabic);
    } else if (context == "glide_vowel") {
      ArabicEntry& e = table.arabic_[arabic];
      e.latin_vowel = latin;
      e.kind = Kind::kGlide;
      table.latin_.emplace(latin, arabic);
    } else if (context == "word_initial") {
      table.arabic_initial_[arabic] = latin;
      table.latin_initial_.emplace(latin, arabic);
    } else {
      throw ParseError(row.line, "unknown transliteration context '" + context + "'");
    }
  }
  for (const auto& [arabic, entry] : table.arabic_) {
    if (entry.kind == Kind::kGlide && (entry.latin.empty() || entry.latin_vowel.empty())) {
      throw Error(ErrorKind::kSchema, "glide " + utf8::encode(arabic) +
                                          " needs both glide and glide_vowel rows");
    }
  }
  return table;
}

const TransliterationTable& TransliterationTable::builtin() {
  static const TransliterationTable table =
      from_tsv(embedded_data("transliteration.tsv").value());
  return table;
}

std::string TransliterationTable::arabic_to_latin_word(
    std::u32string_view word, std::vector<char32_t>* unmapped) const {
  struct Raw {
    std::u32string latin;
    std::u32string latin_vowel;
    Kind kind;
  };
  std::vector<Raw> raw;
  std::size_t i = 0;
  if (!word.empty()) {
    for (std::size_t len = std::min<std::size_t>(3, word.size()); len >= 1; --len) {
      auto it = arabic_initial_.find(std::u32string(word.substr(0, len)));
      if (it != arabic_initial_.end()) {
        raw.push_back({it->second, {}, Kind::kVowel});
        i = len;
        break;
      }
    }
  }
  while (i < word.size()) {
    bool matched = false;
    for (std::size_t len = std::min<std::size_t>(2, word.size() - i); len >= 1; --len) {
      auto it = arabic_.find(std::u32string(word.substr(i, len)));
      if (it == arabic_.end()) continue;
      raw.push_back({it->second.latin, it->second.latin_vowel, it->second.kind});
      i += len;
      matched = true;
      break;
    }
    if (!matched) {
      if (unmapped) unmapped->push_back(word[i]);
      raw.push_back({std::u32string(1, word[i]), {}, Kind::kConsonant});
      ++i;
    }
  }

  std::vector<Unit> units(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].kind != Kind::kGlide) {
      units[k] = {raw[k].latin, raw[k].kind == Kind::kVowel};
      continue;
    }
    const bool next_vowel = k + 1 < raw.size() && raw[k + 1].kind == Kind::kVowel;
    const bool prev_vowel = k > 0 && units[k - 1].vowel;
    if (k == 0 || next_vowel || prev_vowel) {
      units[k] = {raw[k].latin, false};
    } else {
      units[k] = {raw[k].latin_vowel, true};
    }
  }
  return utf8::encode(Syllabifier(epenthetic_).run(units));
}

std::string TransliterationTable::latin_to_arabic_word(
    std::u32string_view word, std::vector<char32_t>* unmapped) const {
  std::u32string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(), to_lower_latin);
  std::u32string out;
  std::size_t i = 0;
  if (!lower.empty()) {
    for (std::size_t len = std::min<std::size_t>(2, lower.size()); len >= 1; --len) {
      auto it = latin_initial_.find(lower.substr(0, len));
      if (it != latin_initial_.end()) {
        out += it->second;
        i = len;
        break;
      }
    }
  }
  while (i < lower.size()) {
    if (lower.compare(i, epenthetic_.size(), epenthetic_) == 0) {
      i += epenthetic_.size();
      continue;
    }
    auto it = latin_.find(lower.substr(i, 1));
    if (it != latin_.end()) {
      out += it->second;
    } else {
      if (unmapped) unmapped->push_back(word[i]);
      out.push_back(word[i]);
    }
    ++i;
  }
  return utf8::encode(out);
}

std::string TransliterationTable::convert(std::string_view text,
                                          TransliterationDirection direction,
                                          std::vector<char32_t>* unmapped) const {
  const std::u32string s = utf8::decode(text);
  const bool to_latin = direction == TransliterationDirection::kArabicToLatin;
  auto in_word = [&](std::size_t k) {
    const char32_t c = s[k];
    if (to_latin) return utf8::is_arabic_letter(c);
    if (utf8::is_latin_letter(c)) return true;
    // Apostrophes spell the hamza seat / ayn inside Latin words.
    return utf8::is_apostrophe(c) && k > 0 && k + 1 < s.size() &&
           utf8::is_latin_letter(s[k - 1]) && utf8::is_latin_letter(s[k + 1]);
  };
  std::string out;
  std::size_t k = 0;
  while (k < s.size()) {
    if (!in_word(k)) {
      out += utf8::encode(s[k]);
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < s.size() && in_word(end)) ++end;
    const std::u32string_view word(s.data() + k, end - k);
    out += to_latin ? arabic_to_latin_word(word, unmapped)
                    : latin_to_arabic_word(word, unmapped);
    k = end;
  }
  return out;
}

std::vector<std::u32string> TransliterationTable::latin_graphemes() const {
  std::vector<std::u32string> out;
  for (const auto& [arabic, entry] : arabic_) {
    out.push_back(entry.latin);
    if (!entry.latin_vowel.empty()) out.push_back(entry.latin_vowel);
  }
  for (const auto& [arabic, latin] : arabic_initial_) out.push_back(latin);
  out.push_back(epenthetic_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NormalizedText transliterate(const NormalizedText& text,
                             TransliterationDirection direction,
                             const TransliterationTable& table) {
  std::vector<char32_t> unmapped;
  NormalizedText out = normalize(table.convert(text.text, direction, &unmapped));
  for (char32_t c : unmapped) {
    out.warnings.push_back({0, c, "unmapped grapheme " + utf8::encode(c)});
  }
  return out;
}

}  // namespace ckbvar
