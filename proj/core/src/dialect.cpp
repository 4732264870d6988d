#include "ckbvar/dialect.hpp"

#include "ckbvar/error.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

std::string_view subdialect_code(Subdialect s) {
  switch (s) {
    case Subdialect::kStandard: return "std";
    case Subdialect::kSulaymaniyah: return "slm";
    case Subdialect::kSanandaj: return "snn";
    case Subdialect::kErbil: return "hwl";
    case Subdialect::kMahabad: return "mhb";
    case Subdialect::kKalar: return "klr";
    case Subdialect::kSardasht: return "srd";
  }
  return "";
}

std::string_view subdialect_name(Subdialect s) {
  switch (s) {
    case Subdialect::kStandard: return "Standard";
    case Subdialect::kSulaymaniyah: return "Sulaymaniyah";
    case Subdialect::kSanandaj: return "Sanandaj";
    case Subdialect::kErbil: return "Erbil";
    case Subdialect::kMahabad: return "Mahabad";
    case Subdialect::kKalar: return "Kalar";
    case Subdialect::kSardasht: return "Sardasht";
  }
  return "";
}

std::string_view tag_level_name(TagLevel level) {
  switch (level) {
    case TagLevel::kLanguage: return "language";
    case TagLevel::kDialect: return "dialect";
    case TagLevel::kSubdialect: return "subdialect";
  }
  return "";
}

TagLevel parse_tag_level(std::string_view name) {
  const std::string lower = utf8::to_lower_ascii(name);
  if (lower == "language") return TagLevel::kLanguage;
  if (lower == "dialect") return TagLevel::kDialect;
  if (lower == "subdialect") return TagLevel::kSubdialect;
  throw Error(ErrorKind::kInvalidInput, "unknown level '" + std::string(name) + "'");
}

namespace {

std::optional<Subdialect> find_subdialect(std::string_view text) {
  std::string lower = utf8::to_lower_ascii(text);
  if (lower == "s1m") lower = "slm";
  if (lower == "hw1") lower = "hwl";
  if (lower == "k1r") lower = "klr";
  for (Subdialect s : kAllSubdialects) {
    if (lower == subdialect_code(s) ||
        lower == utf8::to_lower_ascii(subdialect_name(s))) {
      return s;
    }
  }
  return std::nullopt;
}

std::optional<std::string> dialect_of_language(std::string_view language) {
  if (language == "ckb") return "Central";
  if (language == "kmr") return "Northern";
  if (language == "sdh") return "Southern";
  return std::nullopt;
}

}  // namespace

DialectTag DialectTag::of(Subdialect s) {
  DialectTag tag;
  tag.language = "ckb";
  tag.dialect = "Central";
  tag.subdialect = s;
  return tag;
}

DialectTag DialectTag::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::kInvalidInput, "empty dialect tag");
  if (auto s = find_subdialect(text)) return of(*s);
  const std::size_t dash = text.find('-');
  const std::string language = utf8::to_lower_ascii(text.substr(0, dash));
  for (char c : language) {
    if (c < 'a' || c > 'z') {
      throw Error(ErrorKind::kInvalidInput, "bad dialect tag '" + std::string(text) + "'");
    }
  }
  if (dash == std::string_view::npos) {
    DialectTag tag;
    tag.language = language;
    tag.dialect = dialect_of_language(language);
    return tag;
  }
  if (language != "ckb") {
    throw Error(ErrorKind::kInvalidInput,
                "subdialects are defined for ckb only: '" + std::string(text) + "'");
  }
  auto s = find_subdialect(text.substr(dash + 1));
  if (!s) {
    throw Error(ErrorKind::kInvalidInput, "unknown subdialect in '" + std::string(text) + "'");
  }
  return of(*s);
}

std::string DialectTag::to_string() const {
  if (!subdialect) return language;
  return language + "-" + std::string(subdialect_code(*subdialect));
}

TagLevel DialectTag::level() const {
  if (subdialect) return TagLevel::kSubdialect;
  if (dialect) return TagLevel::kDialect;
  return TagLevel::kLanguage;
}

bool DialectTag::is_standard() const {
  return language == "ckb" &&
         (!subdialect || *subdialect == Subdialect::kStandard);
}

}  // namespace ckbvar
