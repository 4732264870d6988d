#include "ckbvar/morphology.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

namespace {

using C = MorphCategory;
using Slot = std::vector<MorphCategory>;

struct Template {
  std::string_view name;
  std::vector<Slot> prefix_slots;
  std::vector<Slot> suffix_slots;
};

const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      {"noun",
       {},
       {{C::kIndfSg, C::kDefSg, C::kDefPl, C::kDem},
        {C::kIndfPl},
        {C::kObl},
        {C::kIzafe},
        {C::kCliticIsh}}},
      {"verb", {{C::kNeg, C::kSbjv, C::kProg}}, {{C::kVsuffEwe, C::kAdverbialE}, {C::kCliticIsh}}},
      {"infinitive", {}, {{C::kInf}, {C::kCliticIsh}}},
      {"adjective", {}, {{C::kComp, C::kSup}}},
  };
  return t;
}

// Person endings left fused to a verb residual.
const std::vector<std::string_view> kLatinPersonEndings = {"im", "î", "ît", "ê", "a",
                                                           "at", "în", "in", "n"};
const std::vector<std::string_view> kArabicPersonEndings = {"م", "ی", "یت", "ێ", "ا",
                                                            "ات", "ین", "ن"};

bool has_person_ending(std::string_view residual, Script script) {
  const auto& endings = script == Script::kArabic ? kArabicPersonEndings : kLatinPersonEndings;
  return std::any_of(endings.begin(), endings.end(),
                     [&](std::string_view e) { return residual.ends_with(e); });
}

// Arabic -ن is only the infinitive after a consonant (Latin -in).
bool ends_in_arabic_vowel(std::string_view stem) {
  for (std::string_view v : {"ا", "ە", "ێ", "ۆ"}) {
    if (stem.ends_with(v)) return true;
  }
  return false;
}

std::string strip_marker(std::string_view s) {
  if (s.starts_with("=") || s.starts_with("-")) s.remove_prefix(1);
  if (s.ends_with("-")) s.remove_suffix(1);
  return std::string(s);
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  }
  return out;
}

struct Candidate {
  MorphCategory category;
  std::string surface;
};

// Every usable (category, surface) for the slot in the given script.
std::vector<Candidate> slot_candidates(const Slot& slot, const MorphemeInventory& inv,
                                       Subdialect d, Script script) {
  std::vector<Candidate> out;
  for (MorphCategory c : slot) {
    if (!inv.available(c, d)) continue;
    for (const SurfaceForm& f : inv.forms(c, d)) {
      const std::string& s = f.in(script);
      if (!s.empty()) out.push_back({c, s});
    }
  }
  return out;
}

}  // namespace

std::string_view category_name(MorphCategory c) {
  switch (c) {
    case C::kIndfSg: return "INDF_SG";
    case C::kIndfPl: return "INDF_PL";
    case C::kDefSg: return "DEF_SG";
    case C::kDefPl: return "DEF_PL";
    case C::kDem: return "DEM";
    case C::kObl: return "OBL";
    case C::kIzafe: return "IZAFE";
    case C::kInf: return "INF";
    case C::kProg: return "PROG";
    case C::kSbjv: return "SBJV";
    case C::kNeg: return "NEG";
    case C::kVsuffEwe: return "VSUFF_EWE";
    case C::kAdverbialE: return "ADVERBIAL_E";
    case C::kCliticIsh: return "CLITIC_ISH";
    case C::kComp: return "COMP";
    case C::kSup: return "SUP";
  }
  return "";
}

MorphCategory parse_category(std::string_view name) {
  const std::string upper = to_upper(name);
  for (std::size_t i = 0; i < kMorphCategoryCount; ++i) {
    const auto c = static_cast<MorphCategory>(i);
    if (category_name(c) == upper) return c;
  }
  if (upper == "PL") return C::kIndfPl;
  if (upper == "INDF") return C::kIndfSg;
  if (upper == "DEF") return C::kDefSg;
  throw Error(ErrorKind::kInvalidInput, "unknown morpheme category '" + std::string(name) + "'");
}

std::string_view position_name(AffixPosition p) {
  switch (p) {
    case AffixPosition::kPrefix: return "prefix";
    case AffixPosition::kSuffix: return "suffix";
    case AffixPosition::kEnclitic: return "enclitic";
  }
  return "";
}

std::string Morpheme::display() const {
  if (script_of(surface) == Script::kArabic) return surface;
  switch (position) {
    case AffixPosition::kPrefix: return surface + "-";
    case AffixPosition::kSuffix: return "-" + surface;
    case AffixPosition::kEnclitic: return "=" + surface;
  }
  return surface;
}

std::string MorphAnalysis::surface() const {
  std::string out;
  for (const auto& m : prefixes) out += m.surface;
  out += stem;
  for (const auto& m : suffixes) out += m.surface;
  return out;
}

std::vector<MorphCategory> MorphAnalysis::categories() const {
  std::vector<MorphCategory> out;
  for (const auto& m : morphemes()) out.push_back(m.category);
  return out;
}

std::vector<Morpheme> MorphAnalysis::morphemes() const {
  std::vector<Morpheme> out = prefixes;
  out.insert(out.end(), suffixes.begin(), suffixes.end());
  return out;
}

MorphemeInventory MorphemeInventory::from_tsv(std::string_view text) {
  MorphemeInventory inv;
  std::array<bool, kMorphCategoryCount> seen_position{};
  for (const TsvRow& row : parse_tsv(text)) {
    if (row.fields.size() != 6) {
      throw ParseError(row.line, "expected 6 fields in morpheme row");
    }
    MorphCategory c;
    DialectTag tag;
    try {
      c = parse_category(row.fields[0]);
      tag = DialectTag::parse(row.fields[1]);
    } catch (const Error& e) {
      throw ParseError(row.line, e.what());
    }
    if (!tag.subdialect) throw ParseError(row.line, "morpheme row needs a subdialect");
    AffixPosition pos;
    const std::string& p = row.fields[4];
    if (p == "prefix") pos = AffixPosition::kPrefix;
    else if (p == "suffix") pos = AffixPosition::kSuffix;
    else if (p == "enclitic") pos = AffixPosition::kEnclitic;
    else throw ParseError(row.line, "unknown position '" + p + "'");

    const auto idx = static_cast<std::size_t>(c);
    if (seen_position[idx] && inv.positions_[idx] != pos) {
      throw ParseError(row.line, "conflicting position for " + row.fields[0]);
    }
    seen_position[idx] = true;
    inv.positions_[idx] = pos;

    Cell& cell = inv.cells_[{c, *tag.subdialect}];
    const bool available = row.fields[5] == "1";
    if (!available && row.fields[5] != "0") {
      throw ParseError(row.line, "available must be 0 or 1");
    }
    if (!available) {
      if (!cell.forms.empty()) throw ParseError(row.line, "cell both available and not");
      cell.available = false;
      continue;
    }
    cell.available = true;
    SurfaceForm form{strip_marker(decode_table_field(row.fields[2])),
                     decode_table_field(row.fields[3])};
    if (form.latin.empty() != form.arabic.empty()) {
      throw ParseError(row.line, "empty surface must be empty in both scripts");
    }
    // surfaces go through the same cleanup as text
    if (normalize(form.latin).text != form.latin || normalize(form.arabic).text != form.arabic) {
      throw ParseError(row.line, "surface form is not normalized");
    }
    cell.forms.push_back(std::move(form));
  }
  for (std::size_t i = 0; i < kMorphCategoryCount; ++i) {
    const auto c = static_cast<MorphCategory>(i);
    if (!inv.cells_.contains({c, Subdialect::kStandard})) {
      throw Error(ErrorKind::kSchema,
                  "no Standard row for " + std::string(category_name(c)));
    }
  }
  return inv;
}

const MorphemeInventory& MorphemeInventory::builtin() {
  static const MorphemeInventory inv = from_tsv(embedded_data("morphemes.tsv").value());
  return inv;
}

const MorphemeInventory::Cell* MorphemeInventory::cell(MorphCategory c, Subdialect d) const {
  auto it = cells_.find({c, d});
  if (it == cells_.end()) it = cells_.find({c, Subdialect::kStandard});
  return it == cells_.end() ? nullptr : &it->second;
}

bool MorphemeInventory::available(MorphCategory c, Subdialect d) const {
  const Cell* x = cell(c, d);
  return x != nullptr && x->available;
}

const std::vector<SurfaceForm>& MorphemeInventory::forms(MorphCategory c, Subdialect d) const {
  const Cell* x = cell(c, d);
  if (x == nullptr || !x->available) {
    throw Error(ErrorKind::kUnavailableMorpheme,
                std::string(category_name(c)) + " is not available in " +
                    std::string(subdialect_name(d)));
  }
  return x->forms;
}

AffixPosition MorphemeInventory::position(MorphCategory c) const {
  return positions_[static_cast<std::size_t>(c)];
}

std::vector<Subdialect> MorphemeInventory::varieties() const {
  std::set<Subdialect> s;
  for (const auto& [key, cell] : cells_) s.insert(key.second);
  return {s.begin(), s.end()};
}

Subdialect inventory_variety(const DialectTag& tag, const MorphemeInventory& inventory) {
  if (!tag.subdialect) return Subdialect::kStandard;
  auto v = inventory.varieties();
  if (std::find(v.begin(), v.end(), *tag.subdialect) == v.end()) return Subdialect::kStandard;
  return *tag.subdialect;
}

std::vector<MorphAnalysis> MorphAnalyzer::analyze(std::string_view word,
                                                  const DialectTag& dialect) const {
  if (word.empty()) throw Error(ErrorKind::kInvalidInput, "empty token");
  for (char32_t c : utf8::decode(word)) {
    if (utf8::is_space(c)) {
      throw Error(ErrorKind::kInvalidInput, "token contains whitespace: '" + std::string(word) + "'");
    }
  }
  const Script script = script_of(word);
  const Subdialect d = inventory_variety(dialect, *inventory_);
  const MorphemeInventory& inv = *inventory_;

  std::vector<MorphAnalysis> found;
  std::set<std::tuple<std::string, std::vector<MorphCategory>, std::string>> keys;

  auto accept = [&](MorphAnalysis a, bool verb_prefixed) {
    if (utf8::length(a.stem) < 2) return;
    if (verb_prefixed && !has_person_ending(a.stem, script)) return;
    for (const auto& m : a.suffixes) {
      if (m.category == C::kInf && script == Script::kArabic && ends_in_arabic_vowel(a.stem)) {
        return;
      }
    }
    std::string affixes;
    for (const auto& m : a.morphemes()) affixes += m.surface + "|";
    if (!keys.emplace(a.stem, a.categories(), affixes).second) return;
    found.push_back(std::move(a));
  };

  for (const Template& t : templates()) {
    std::vector<std::pair<std::optional<Morpheme>, std::string_view>> starts;
    starts.push_back({std::nullopt, word});
    for (const Slot& slot : t.prefix_slots) {
      for (const Candidate& c : slot_candidates(slot, inv, d, script)) {
        if (word.starts_with(c.surface)) {
          // Bare ب then و/ی reads as bû/bî, never bi-.
          if (script == Script::kArabic && c.surface == "ب" &&
              (word.substr(c.surface.size()).starts_with("و") || word.substr(c.surface.size()).starts_with("ی"))) {
            continue;
          }
          starts.push_back({Morpheme{c.category, c.surface, inv.position(c.category)},
                            word.substr(c.surface.size())});
        }
      }
    }
    for (const auto& [prefix, rest] : starts) {
      // Strip suffix slots right to left.
      struct Partial {
        std::string_view rest;
        std::vector<Morpheme> suffixes;  // outermost first
      };
      std::vector<Partial> partials = {{rest, {}}};
      for (auto slot = t.suffix_slots.rbegin(); slot != t.suffix_slots.rend(); ++slot) {
        std::vector<Partial> next = partials;
        for (const Partial& p : partials) {
          for (const Candidate& c : slot_candidates(*slot, inv, d, script)) {
            if (p.rest.size() > c.surface.size() && p.rest.ends_with(c.surface)) {
              Partial q{p.rest.substr(0, p.rest.size() - c.surface.size()), p.suffixes};
              q.suffixes.push_back({c.category, c.surface, inv.position(c.category)});
              next.push_back(std::move(q));
            }
          }
        }
        partials = std::move(next);
      }
      for (Partial& p : partials) {
        if (!prefix && p.suffixes.empty()) continue;
        MorphAnalysis a;
        a.stem = std::string(p.rest);
        if (prefix) a.prefixes.push_back(*prefix);
        a.suffixes.assign(p.suffixes.rbegin(), p.suffixes.rend());
        accept(std::move(a), prefix.has_value());
      }
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const MorphAnalysis& x, const MorphAnalysis& y) {
    if (x.morpheme_count() != y.morpheme_count()) return x.morpheme_count() < y.morpheme_count();
    return utf8::length(x.stem) > utf8::length(y.stem);
  });
  int rank = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (i == 0 || found[i].morpheme_count() != found[i - 1].morpheme_count() ||
        utf8::length(found[i].stem) != utf8::length(found[i - 1].stem)) {
      ++rank;
    }
    found[i].confidence_rank = rank;
  }
  MorphAnalysis whole;
  whole.stem = std::string(word);
  whole.confidence_rank = rank + 1;
  found.push_back(std::move(whole));
  return found;
}

namespace {

// Orders morphemes by the first template that fits all of them.
std::vector<Morpheme> place_in_template(std::vector<Morpheme> ms) {
  std::set<MorphCategory> cats;
  for (const auto& m : ms) {
    if (!cats.insert(m.category).second) {
      throw Error(ErrorKind::kTemplate,
                  "category " + std::string(category_name(m.category)) + " used twice");
    }
  }
  if (ms.empty()) return ms;
  for (const Template& t : templates()) {
    std::vector<Slot> slots = t.prefix_slots;
    const std::size_t n_prefix = slots.size();
    slots.insert(slots.end(), t.suffix_slots.begin(), t.suffix_slots.end());
    std::vector<int> slot_of(ms.size(), -1);
    std::set<int> used;
    bool ok = true;
    for (std::size_t i = 0; i < ms.size() && ok; ++i) {
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (std::find(slots[s].begin(), slots[s].end(), ms[i].category) != slots[s].end()) {
          slot_of[i] = static_cast<int>(s);
        }
      }
      ok = slot_of[i] >= 0 && used.insert(slot_of[i]).second;
    }
    if (!ok) continue;
    std::vector<std::size_t> order(ms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return slot_of[a] < slot_of[b]; });
    std::vector<Morpheme> out;
    for (std::size_t i : order) {
      ms[i].position = static_cast<std::size_t>(slot_of[i]) < n_prefix
                           ? AffixPosition::kPrefix
                           : (ms[i].category == C::kCliticIsh ? AffixPosition::kEnclitic
                                                              : AffixPosition::kSuffix);
      out.push_back(ms[i]);
    }
    return out;
  }
  std::string names;
  for (const auto& m : ms) names += (names.empty() ? "" : "+") + std::string(category_name(m.category));
  throw Error(ErrorKind::kTemplate, "no slot template accepts " + names);
}

GeneratedForm assemble(std::string_view stem, const std::vector<Morpheme>& ordered) {
  GeneratedForm out;
  for (const auto& m : ordered) {
    if (m.position == AffixPosition::kPrefix) out.surface += m.surface;
  }
  out.surface += stem;
  for (const auto& m : ordered) {
    if (m.position != AffixPosition::kPrefix) out.surface += m.surface;
    if (m.surface.empty()) out.flags.push_back("empty-surface:" + std::string(category_name(m.category)));
  }
  return out;
}

}  // namespace

GeneratedForm MorphAnalyzer::generate(std::string_view stem,
                                      std::span<const MorphCategory> categories,
                                      const DialectTag& dialect) const {
  if (stem.empty()) throw Error(ErrorKind::kInvalidInput, "empty stem");
  const Script script = script_of(stem);
  const Subdialect d = inventory_variety(dialect, *inventory_);
  std::vector<Morpheme> ms;
  for (MorphCategory c : categories) {
    const SurfaceForm& f = inventory_->forms(c, d).front();
    ms.push_back({c, f.in(script), inventory_->position(c)});
  }
  return assemble(stem, place_in_template(std::move(ms)));
}

GeneratedForm MorphAnalyzer::generate(std::string_view stem, std::span<const Morpheme> morphemes,
                                      const DialectTag& dialect) const {
  if (stem.empty()) throw Error(ErrorKind::kInvalidInput, "empty stem");
  const Subdialect d = inventory_variety(dialect, *inventory_);
  std::vector<Morpheme> ms(morphemes.begin(), morphemes.end());
  for (const auto& m : ms) {
    const auto& forms = inventory_->forms(m.category, d);
    const bool known = std::any_of(forms.begin(), forms.end(), [&](const SurfaceForm& f) {
      return f.latin == m.surface || f.arabic == m.surface;
    });
    if (!known) {
      throw Error(ErrorKind::kUnavailableMorpheme,
                  "'" + m.surface + "' is not a " + std::string(subdialect_name(d)) + " form of " +
                      std::string(category_name(m.category)));
    }
  }
  return assemble(stem, place_in_template(std::move(ms)));
}

std::vector<MorphAnalysis> analyze(std::string_view word, const DialectTag& dialect) {
  static const MorphAnalyzer analyzer;
  return analyzer.analyze(word, dialect);
}

std::string generate(std::string_view stem, std::span<const MorphCategory> categories,
                     const DialectTag& dialect) {
  static const MorphAnalyzer analyzer;
  return analyzer.generate(stem, categories, dialect).surface;
}

}  // namespace ckbvar
