#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ckbvar {

enum class Subdialect {
  kStandard,
  kSulaymaniyah,
  kSanandaj,
  kErbil,
  kMahabad,
  kKalar,
  kSardasht,
};

inline constexpr std::array<Subdialect, 7> kAllSubdialects = {
    Subdialect::kStandard, Subdialect::kSulaymaniyah, Subdialect::kSanandaj,
    Subdialect::kErbil,    Subdialect::kMahabad,      Subdialect::kKalar,
    Subdialect::kSardasht};

// The four varieties with conversion rules.
inline constexpr std::array<Subdialect, 4> kRuleSubdialects = {
    Subdialect::kSulaymaniyah, Subdialect::kSanandaj, Subdialect::kErbil,
    Subdialect::kMahabad};

std::string_view subdialect_code(Subdialect s);  // "slm", "snn", ...
std::string_view subdialect_name(Subdialect s);  // "Sulaymaniyah", ...

enum class TagLevel { kLanguage, kDialect, kSubdialect };

std::string_view tag_level_name(TagLevel level);
TagLevel parse_tag_level(std::string_view name);

// language / dialect / subdialect label; a subdialect implies its dialect
// and language. String form is `language[-subdialect-code]`, e.g. ckb-snn.
struct DialectTag {
  std::string language = "ckb";
  std::optional<std::string> dialect;
  std::optional<Subdialect> subdialect;

  static DialectTag of(Subdialect s);

  // Accepts "ckb-snn", "snn", "Sanandaj", "ckb", "kmr", "standard". The
  // typographic variants "ckb-s1m", "ckb-hw1", "ckb-k1r" seen in the wild are read
  // as slm/hwl/klr.
  static DialectTag parse(std::string_view text);

  std::string to_string() const;
  TagLevel level() const;

  // Standard Central Kurdish: ckb with no subdialect, or ckb-std.
  bool is_standard() const;

  friend bool operator==(const DialectTag&, const DialectTag&) = default;
};

}  // namespace ckbvar
