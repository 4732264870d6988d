#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckbvar/dialect.hpp"
#include "ckbvar/morphology.hpp"
#include "ckbvar/orthography.hpp"

namespace ckbvar {

enum class RuleKind { kMorph, kVocab, kTerm };

std::string_view rule_kind_name(RuleKind kind);

// One standard/dialect pair. Vocab and term entries may span several tokens.
struct RuleEntry {
  RuleKind kind = RuleKind::kVocab;
  SurfaceForm standard;
  SurfaceForm dialect_form;
  bool bijective = true;
  bool declared_bijective = true;  // as written in the table
  std::optional<MorphCategory> category;  // morph rules only
  std::size_t line = 0;
};

struct RuleSet {
  Subdialect dialect = Subdialect::kStandard;
  std::vector<RuleEntry> morph_rules;
  std::vector<RuleEntry> vocab_map;
  std::vector<RuleEntry> term_map;

  // Entry whose source side (standard when to_dialect) equals the
  // space-joined phrase, in either script. Standardization only sees
  // bijective entries.
  const RuleEntry* find(RuleKind kind, std::string_view phrase, bool to_dialect) const;
  std::size_t longest_phrase = 1;  // in tokens

 private:
  friend class RuleBook;
  std::map<std::string, std::size_t, std::less<>> index_[2][2];  // [vocab/term][direction]
};

class RuleBook {
 public:
  // Rows: kind, standard, dialect_form, dialect, bijective[, category].
  static RuleBook from_tsv(std::string_view text,
                           const MorphemeInventory& inventory = MorphemeInventory::builtin(),
                           const TransliterationTable& translit = TransliterationTable::builtin());
  static const RuleBook& builtin();

  // Rows of `other` are appended to this book's (later files extend earlier).
  void merge(const RuleBook& other);

  bool covers(Subdialect d) const { return sets_.contains(d); }
  const RuleSet& rules_for(Subdialect d) const;  // throws unsupported-dialect
  std::vector<Subdialect> dialects() const;

 private:
  void finalize();

  std::map<Subdialect, RuleSet> sets_;
};

struct Rewrite {
  std::size_t token = 0;   // index in the input
  std::size_t length = 1;  // input tokens consumed
  std::string from;
  std::string to;
  RuleKind kind = RuleKind::kVocab;
  bool bijective = true;
};

struct TransductionResult {
  NormalizedText text;
  std::vector<Rewrite> rewrites;

  // Rewrites that cannot be undone by the opposite direction.
  std::vector<Rewrite> flagged() const;
};

class Transducer {
 public:
  explicit Transducer(const RuleBook& rules = RuleBook::builtin(),
                      const MorphAnalyzer& analyzer = MorphAnalyzer())
      : rules_(&rules), analyzer_(analyzer) {}

  TransductionResult dialectalize(const NormalizedText& text, const DialectTag& target) const;
  TransductionResult standardize(const NormalizedText& text, const DialectTag& source) const;

 private:
  enum class Direction { kToDialect, kToStandard };
  TransductionResult run(const NormalizedText& text, const DialectTag& tag, Direction dir) const;
  std::optional<Rewrite> rewrite_morph(std::string_view token, const RuleSet& set,
                                       Direction dir) const;

  const RuleBook* rules_;
  MorphAnalyzer analyzer_;
};

NormalizedText dialectalize(const NormalizedText& text, const DialectTag& target);
NormalizedText standardize(const NormalizedText& text, const DialectTag& source);

// Aligned wordlists: one column per variety, std::nullopt where absent.
struct Wordlists {
  std::vector<std::string> varieties;
  std::vector<std::string> ids;
  std::vector<std::vector<std::optional<std::string>>> rows;  // rows[i][variety]

  // Header `id \t Variety...`; "-", "✗" or an empty cell mark absence.
  static Wordlists from_tsv(std::string_view text);
  static const Wordlists& builtin();
};

struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // percentages

  double at(std::string_view a, std::string_view b) const;
  std::string to_csv() const;
};

// Share of rows on which two varieties agree after normalization. Two absent
// cells count as agreeing.
SimilarityMatrix similarity_matrix(const Wordlists& lists);

}  // namespace ckbvar
