#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckbvar/dialect.hpp"
#include "ckbvar/orthography.hpp"

namespace ckbvar {

enum class MorphCategory {
  kIndfSg,
  kIndfPl,
  kDefSg,
  kDefPl,
  kDem,
  kObl,
  kIzafe,
  kInf,
  kProg,
  kSbjv,
  kNeg,
  kVsuffEwe,
  kAdverbialE,
  kCliticIsh,
  kComp,
  kSup,
};

inline constexpr std::size_t kMorphCategoryCount = 16;

std::string_view category_name(MorphCategory c);  // "INDF_SG", ...
MorphCategory parse_category(std::string_view name);

enum class AffixPosition { kPrefix, kSuffix, kEnclitic };

std::string_view position_name(AffixPosition p);

// One affix occurrence inside a word. surface is the bare string as it
// appears in the word (no -/= markers).
struct Morpheme {
  MorphCategory category;
  std::string surface;
  AffixPosition position = AffixPosition::kSuffix;

  // "de-", "-an", "=îş"; Arabic surfaces are returned unmarked.
  std::string display() const;

  friend bool operator==(const Morpheme&, const Morpheme&) = default;
};

struct MorphAnalysis {
  std::string stem;
  std::vector<Morpheme> prefixes;
  std::vector<Morpheme> suffixes;
  int confidence_rank = 1;

  std::string surface() const;
  std::size_t morpheme_count() const { return prefixes.size() + suffixes.size(); }
  std::vector<MorphCategory> categories() const;
  std::vector<Morpheme> morphemes() const;  // prefixes then suffixes
  bool zero_affix() const { return morpheme_count() == 0; }
};

struct SurfaceForm {
  std::string latin;   // "" for an empty (∅) surface
  std::string arabic;

  const std::string& in(Script script) const {
    return script == Script::kArabic ? arabic : latin;
  }
};

// Table of bound morphemes per (category, variety). Varieties without their
// own column (Kalar, Sardasht) read the Standard column.
class MorphemeInventory {
 public:
  static MorphemeInventory from_tsv(std::string_view text);
  static const MorphemeInventory& builtin();

  bool available(MorphCategory c, Subdialect d) const;
  // Preference-ordered; throws unavailable-morpheme when the cell is ✗.
  const std::vector<SurfaceForm>& forms(MorphCategory c, Subdialect d) const;
  AffixPosition position(MorphCategory c) const;

  // Varieties with a column of their own.
  std::vector<Subdialect> varieties() const;

 private:
  struct Cell {
    bool available = false;
    std::vector<SurfaceForm> forms;
  };
  const Cell* cell(MorphCategory c, Subdialect d) const;

  std::map<std::pair<MorphCategory, Subdialect>, Cell> cells_;
  std::array<AffixPosition, kMorphCategoryCount> positions_{};
};

// Inventory column for a tag: its subdialect, else Standard.
Subdialect inventory_variety(const DialectTag& tag, const MorphemeInventory& inventory);

struct GeneratedForm {
  std::string surface;
  std::vector<std::string> flags;  // e.g. "empty-surface:IZAFE"
};

class MorphAnalyzer {
 public:
  explicit MorphAnalyzer(const MorphemeInventory& inventory = MorphemeInventory::builtin())
      : inventory_(&inventory) {}

  // All template-consistent segmentations, best first; the whole-word
  // analysis is always last.
  std::vector<MorphAnalysis> analyze(std::string_view word, const DialectTag& dialect) const;

  // First listed surface per category, affixes placed by the slot template.
  GeneratedForm generate(std::string_view stem, std::span<const MorphCategory> categories,
                         const DialectTag& dialect) const;

  // Explicit surfaces; each must be one of the dialect's forms for its
  // category.
  GeneratedForm generate(std::string_view stem, std::span<const Morpheme> morphemes,
                         const DialectTag& dialect) const;

  const MorphemeInventory& inventory() const { return *inventory_; }

 private:
  const MorphemeInventory* inventory_;
};

std::vector<MorphAnalysis> analyze(std::string_view word, const DialectTag& dialect);
std::string generate(std::string_view stem, std::span<const MorphCategory> categories,
                     const DialectTag& dialect);

}  // namespace ckbvar
