#include "ckbvar/utf8.hpp"

#include <algorithm>

#include <boost/locale/encoding_utf.hpp>

namespace ckbvar::utf8 {

std::u32string decode(std::string_view bytes) {
  return boost::locale::conv::utf_to_utf<char32_t>(
      bytes.data(), bytes.data() + bytes.size(), boost::locale::conv::skip);
}

std::string encode(std::u32string_view code_points) {
  return boost::locale::conv::utf_to_utf<char>(
      code_points.data(), code_points.data() + code_points.size(),
      boost::locale::conv::skip);
}

std::string encode(char32_t code_point) {
  return encode(std::u32string_view(&code_point, 1));
}

std::size_t length(std::string_view bytes) {
  return static_cast<std::size_t>(std::count_if(
      bytes.begin(), bytes.end(),
      [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool is_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool is_arabic_letter(char32_t c) {
  if (c >= 0x0621 && c <= 0x064A) return c != 0x0640;
  if (c >= 0x0671 && c <= 0x06D3) return true;
  return c == 0x06D5 || c == 0x06EE || c == 0x06EF || c == 0x06FA ||
         c == 0x06FB || c == 0x06FC || c == 0x06FF;
}

bool is_latin_letter(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  // Combining diacritics used in decomposed Latin input.
  if (c >= 0x0300 && c <= 0x036F) return true;
  // Modifier letters seen in romanized loanwords (e.g. ‘ayn).
  return c == 0x1E27 || c == 0x1E26 || c == 0x1E8D || c == 0x1E8C;
}

bool is_letter(char32_t c) {
  return is_arabic_letter(c) || is_latin_letter(c);
}

bool is_digit(char32_t c) {
  return (c >= U'0' && c <= U'9') || (c >= 0x0660 && c <= 0x0669) ||
         (c >= 0x06F0 && c <= 0x06F9);
}

bool is_apostrophe(char32_t c) {
  return c == U'\'' || c == 0x2018 || c == 0x2019;
}

bool is_punctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0x00AB:  // «
    case 0x00BB:  // »
    case 0x060C:  // Arabic comma
    case 0x061B:  // Arabic semicolon
    case 0x061F:  // Arabic question mark
    case 0x066A:  // Arabic percent
    case 0x066B:  // Arabic decimal separator
    case 0x066C:  // Arabic thousands separator
    case 0x06D4:  // Arabic full stop
    case 0x2010:
    case 0x2011:
    case 0x2012:
    case 0x2013:
    case 0x2014:
    case 0x201C:
    case 0x201D:
    case 0x2026:  // …
      return true;
    default:
      return false;
  }
}

bool has_arabic(std::u32string_view text) {
  return std::any_of(text.begin(), text.end(), is_arabic_letter);
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace ckbvar::utf8
