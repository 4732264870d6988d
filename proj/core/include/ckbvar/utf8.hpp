#pragma once

#include <string>
#include <string_view>

namespace ckbvar::utf8 {

// Invalid byte sequences are dropped.
std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view code_points);
std::string encode(char32_t code_point);

// Number of code points in a UTF-8 string.
std::size_t length(std::string_view bytes);

bool is_space(char32_t c);
bool is_arabic_letter(char32_t c);
bool is_latin_letter(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
// Sentence and word punctuation in either script. Apostrophes are handled by
// the tokenizer separately since they can be word-internal.
bool is_punctuation(char32_t c);
bool is_apostrophe(char32_t c);

inline constexpr char32_t kZwnj = U'‌';

// True if any code point is an Arabic-script letter.
bool has_arabic(std::u32string_view text);

std::string to_lower_ascii(std::string_view text);

}  // namespace ckbvar::utf8
