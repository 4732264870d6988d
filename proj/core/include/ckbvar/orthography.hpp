#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ckbvar {

// Byte offsets into NormalizedText::text; [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct TextWarning {
  std::size_t offset = 0;  // byte offset into the text the warning refers to
  char32_t code_point = 0;
  std::string message;
};

// UTF-8 text in canonical form together with its token boundaries.
struct NormalizedText {
  std::string text;
  std::vector<TokenSpan> token_spans;
  std::vector<TextWarning> warnings;

  std::size_t token_count() const { return token_spans.size(); }
  std::string_view token(std::size_t i) const {
    const TokenSpan& span = token_spans.at(i);
    return std::string_view(text).substr(span.begin, span.end - span.begin);
  }
};

enum class Script { kArabic, kLatin };

// Arabic if any code point is an Arabic-script letter.
Script script_of(std::string_view text);

// Character-level cleanup rules, loaded from a TSV of
// `source \t target \t context` rows. Context is one of any, word_initial,
// word_medial, word_final; an empty target deletes the source.
class NormalizationTable {
 public:
  static NormalizationTable from_tsv(std::string_view tsv);
  static const NormalizationTable& builtin();

  // Applies the mapping rules with longest-match-first at each position.
  std::u32string apply(std::u32string_view text) const;

  // True for code points the table rewrites or deletes unconditionally.
  bool blocked(char32_t c) const;

  std::size_t size() const { return rules_.size(); }

 private:
  enum class Context { kAny, kWordInitial, kWordMedial, kWordFinal };
  struct Rule {
    std::u32string target;
    Context context = Context::kAny;
  };
  std::map<std::u32string, std::vector<Rule>> rules_;
  std::size_t longest_source_ = 1;
};

struct NormalizeOptions {
  // When false every ZWNJ is removed; when true ZWNJ survives inside tokens and
  // is stripped at token edges.
  bool keep_zwnj = true;
};

NormalizedText normalize(std::string_view raw, const NormalizeOptions& options = {},
                         const NormalizationTable& table = NormalizationTable::builtin());

// Tokens as strings; punctuation marks are separate tokens.
std::vector<std::string> tokenize(const NormalizedText& text);

// Token boundaries of already-clean text (no mapping, no whitespace changes).
std::vector<TokenSpan> token_spans(std::string_view text);

bool is_punctuation_token(std::string_view token);

enum class TransliterationDirection { kArabicToLatin, kLatinToArabic };

// Grapheme tables for Central Kurdish Arabic script and the Latin scheme
// (ç ê î ş û ł ř ḧ ẍ). Rows are `arabic \t latin \t context` with context in
// {vowel, consonant, glide, glide_vowel, word_initial, epenthetic}.
//
// Arabic -> Latin resolves و/ی by position: word-initial or next to a
// written vowel they are the glides w/y, otherwise the vowels u/î. The
// unwritten vowel i is inserted by a sonority-based syllabifier. Latin ->
// Arabic is a plain lookup that drops non-initial i.
class TransliterationTable {
 public:
  static TransliterationTable from_tsv(std::string_view tsv);
  static const TransliterationTable& builtin();

  std::string arabic_to_latin_word(std::u32string_view word,
                                   std::vector<char32_t>* unmapped = nullptr) const;
  std::string latin_to_arabic_word(std::u32string_view word,
                                   std::vector<char32_t>* unmapped = nullptr) const;

  // Transliterates free text; non-letters pass through unchanged.
  std::string convert(std::string_view text, TransliterationDirection direction,
                      std::vector<char32_t>* unmapped = nullptr) const;

  // Latin graphemes the table can produce from Arabic script.
  std::vector<std::u32string> latin_graphemes() const;

 private:
  enum class Kind { kVowel, kConsonant, kGlide };
  struct ArabicEntry {
    std::u32string latin;        // consonant or vowel reading
    std::u32string latin_vowel;  // glides only
    Kind kind = Kind::kConsonant;
  };
  std::map<std::u32string, ArabicEntry> arabic_;            // 1-2 code points
  std::map<std::u32string, std::u32string> arabic_initial_;  // ئ + vowel
  std::map<std::u32string, std::u32string> latin_;           // latin -> arabic
  std::map<std::u32string, std::u32string> latin_initial_;   // word-initial vowels
  std::u32string epenthetic_;                                // "i"
  std::u32string hamza_;                                     // medial ئ reading
};

NormalizedText transliterate(
    const NormalizedText& text, TransliterationDirection direction,
    const TransliterationTable& table = TransliterationTable::builtin());

}  // namespace ckbvar
