#include "ckbvar/dialect_rules.hpp"

#include <algorithm>
#include <set>

#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

namespace {

std::string strip_marker(std::string_view s) {
  if (s.starts_with("=") || s.starts_with("-")) s.remove_prefix(1);
  if (s.ends_with("-")) s.remove_suffix(1);
  return std::string(s);
}

int kind_slot(RuleKind k) { return k == RuleKind::kTerm ? 1 : 0; }

std::size_t word_count(std::string_view phrase) {
  return static_cast<std::size_t>(std::count(phrase.begin(), phrase.end(), ' ')) + 1;
}

const SurfaceForm* find_form(const std::vector<SurfaceForm>& forms, std::string_view latin) {
  for (const auto& f : forms) {
    if (f.latin == latin) return &f;
  }
  return nullptr;
}

}  // namespace

std::string_view rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kMorph: return "morph";
    case RuleKind::kVocab: return "vocab";
    case RuleKind::kTerm: return "term";
  }
  return "";
}

const RuleEntry* RuleSet::find(RuleKind kind, std::string_view phrase, bool to_dialect) const {
  if (kind == RuleKind::kMorph) return nullptr;
  const auto& index = index_[kind_slot(kind)][to_dialect ? 0 : 1];
  auto it = index.find(phrase);
  if (it == index.end()) return nullptr;
  const auto& entries = kind == RuleKind::kTerm ? term_map : vocab_map;
  return &entries[it->second];
}

RuleBook RuleBook::from_tsv(std::string_view text, const MorphemeInventory& inventory,
                            const TransliterationTable& translit) {
  RuleBook book;
  for (const TsvRow& row : parse_tsv(text)) {
    if (row.fields.size() != 5 && row.fields.size() != 6) {
      throw ParseError(row.line, "expected 5 or 6 fields in rule row");
    }
    RuleEntry e;
    e.line = row.line;
    const std::string& kind = row.fields[0];
    if (kind == "morph") e.kind = RuleKind::kMorph;
    else if (kind == "vocab") e.kind = RuleKind::kVocab;
    else if (kind == "term") e.kind = RuleKind::kTerm;
    else throw ParseError(row.line, "unknown rule kind '" + kind + "'");

    DialectTag tag;
    try {
      tag = DialectTag::parse(row.fields[3]);
    } catch (const Error& err) {
      throw ParseError(row.line, err.what());
    }
    if (!tag.subdialect || *tag.subdialect == Subdialect::kStandard) {
      throw ParseError(row.line, "rule dialect must be a non-standard subdialect");
    }
    const Subdialect d = *tag.subdialect;
    if (row.fields[4] != "0" && row.fields[4] != "1") {
      throw ParseError(row.line, "bijective must be 0 or 1");
    }
    e.declared_bijective = e.bijective = row.fields[4] == "1";

    if (e.kind == RuleKind::kMorph) {
      if (row.fields.size() != 6) throw ParseError(row.line, "morph rule needs a category");
      try {
        e.category = parse_category(row.fields[5]);
        const auto& std_forms = inventory.forms(*e.category, Subdialect::kStandard);
        const auto& dia_forms = inventory.forms(*e.category, d);
        const SurfaceForm* s = find_form(std_forms, strip_marker(row.fields[1]));
        const SurfaceForm* t = find_form(dia_forms, strip_marker(row.fields[2]));
        if (s == nullptr || t == nullptr) {
          throw Error(ErrorKind::kSchema, "morph rule form not in the inventory");
        }
        e.standard = *s;
        e.dialect_form = *t;
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(row.line, err.what());
      }
    } else {
      auto make = [&](const std::string& raw) {
        const std::string form = decode_table_field(raw);
        if (form.empty() || normalize(form).text != form) {
          throw ParseError(row.line, "rule form '" + raw + "' is not normalized");
        }
        SurfaceForm f;
        if (script_of(form) == Script::kArabic) {
          f.arabic = form;
          f.latin = translit.convert(form, TransliterationDirection::kArabicToLatin);
        } else {
          f.latin = form;
          f.arabic = translit.convert(form, TransliterationDirection::kLatinToArabic);
        }
        return f;
      };
      e.standard = make(row.fields[1]);
      e.dialect_form = make(row.fields[2]);
      if (word_count(e.standard.latin) != word_count(e.standard.arabic) ||
          word_count(e.dialect_form.latin) != word_count(e.dialect_form.arabic)) {
        throw ParseError(row.line, "multiword entry changed length under transliteration");
      }
    }
    RuleSet& set = book.sets_[d];
    set.dialect = d;
    auto& list = e.kind == RuleKind::kMorph   ? set.morph_rules
                 : e.kind == RuleKind::kVocab ? set.vocab_map
                                              : set.term_map;
    list.push_back(std::move(e));
  }
  book.finalize();
  return book;
}

const RuleBook& RuleBook::builtin() {
  static const RuleBook book = from_tsv(embedded_data("rules.tsv").value());
  return book;
}

void RuleBook::merge(const RuleBook& other) {
  for (const auto& [d, set] : other.sets_) {
    RuleSet& mine = sets_[d];
    mine.dialect = d;
    auto append = [](std::vector<RuleEntry>& to, const std::vector<RuleEntry>& from) {
      for (RuleEntry e : from) {
        const bool dup = std::any_of(to.begin(), to.end(), [&](const RuleEntry& x) {
          return x.standard.latin == e.standard.latin &&
                 x.dialect_form.latin == e.dialect_form.latin && x.category == e.category;
        });
        e.bijective = e.declared_bijective;
        if (!dup) to.push_back(std::move(e));
      }
    };
    append(mine.morph_rules, set.morph_rules);
    append(mine.vocab_map, set.vocab_map);
    append(mine.term_map, set.term_map);
  }
  finalize();
}

void RuleBook::finalize() {
  for (auto& [d, set] : sets_) {
    // An entry is one-way when its reverse lookup would be ambiguous: two
    // standard forms share a dialect form, or the dialect form is itself a
    // standard form elsewhere in the set.
    std::vector<RuleEntry*> all;
    for (auto* list : {&set.morph_rules, &set.vocab_map, &set.term_map}) {
      for (auto& e : *list) {
        e.bijective = e.declared_bijective;
        all.push_back(&e);
      }
    }
    for (RuleEntry* a : all) {
      for (RuleEntry* b : all) {
        if (a == b || (a->kind == RuleKind::kMorph) != (b->kind == RuleKind::kMorph)) continue;
        if (a->category != b->category) continue;
        const bool same_target = a->dialect_form.latin == b->dialect_form.latin &&
                                 a->standard.latin != b->standard.latin;
        const bool same_source = a->standard.latin == b->standard.latin &&
                                 a->dialect_form.latin != b->dialect_form.latin;
        const bool chained = a->dialect_form.latin == b->standard.latin;
        if (same_target || chained) a->bijective = false;
        // the later of two competing targets never fires forward
        if (same_source && b < a) a->bijective = false;
      }
    }

    set.longest_phrase = 1;
    for (auto& per_kind : set.index_) {
      for (auto& index : per_kind) index.clear();
    }
    for (RuleKind kind : {RuleKind::kVocab, RuleKind::kTerm}) {
      const auto& list = kind == RuleKind::kTerm ? set.term_map : set.vocab_map;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const RuleEntry& e = list[i];
        auto& fwd = set.index_[kind_slot(kind)][0];
        auto& back = set.index_[kind_slot(kind)][1];
        for (const std::string* key : {&e.standard.latin, &e.standard.arabic}) {
          fwd.emplace(*key, i);
          set.longest_phrase = std::max(set.longest_phrase, word_count(*key));
        }
        if (!e.bijective) continue;
        for (const std::string* key : {&e.dialect_form.latin, &e.dialect_form.arabic}) {
          back.emplace(*key, i);
          set.longest_phrase = std::max(set.longest_phrase, word_count(*key));
        }
      }
    }
  }
}

const RuleSet& RuleBook::rules_for(Subdialect d) const {
  auto it = sets_.find(d);
  if (it == sets_.end()) {
    throw Error(ErrorKind::kUnsupportedDialect,
                "no conversion rules for " + std::string(subdialect_name(d)));
  }
  return it->second;
}

std::vector<Subdialect> RuleBook::dialects() const {
  std::vector<Subdialect> out;
  for (const auto& [d, set] : sets_) out.push_back(d);
  return out;
}

std::vector<Rewrite> TransductionResult::flagged() const {
  std::vector<Rewrite> out;
  std::copy_if(rewrites.begin(), rewrites.end(), std::back_inserter(out),
               [](const Rewrite& r) { return !r.bijective; });
  return out;
}

TransductionResult Transducer::dialectalize(const NormalizedText& text,
                                            const DialectTag& target) const {
  return run(text, target, Direction::kToDialect);
}

TransductionResult Transducer::standardize(const NormalizedText& text,
                                           const DialectTag& source) const {
  return run(text, source, Direction::kToStandard);
}

namespace {

std::string suffix_string(const MorphAnalysis& a) {
  std::string s;
  for (const auto& m : a.suffixes) s += m.surface;
  return s;
}

std::string prefix_string(const MorphAnalysis& a) {
  std::string s;
  for (const auto& m : a.prefixes) s += m.surface;
  return s;
}

// a is a shorter reading of an affix that b takes as a whole, e.g. jinek+an
// against jin+ekan, or jin+ek+an against jin+ekan.
bool dominated(const MorphAnalysis& a, const MorphAnalysis& b) {
  if (b.zero_affix() || prefix_string(a) != prefix_string(b)) return false;
  if (b.morpheme_count() > a.morpheme_count()) return false;
  const std::string sa = suffix_string(a);
  const std::string sb = suffix_string(b);
  if (!sb.ends_with(sa)) return false;
  return sb.size() > sa.size() || (sb.size() == sa.size() && b.morpheme_count() < a.morpheme_count());
}

}  // namespace

std::optional<Rewrite> Transducer::rewrite_morph(std::string_view token, const RuleSet& set,
                                                 Direction dir) const {
  if (set.morph_rules.empty() || is_punctuation_token(token)) return std::nullopt;
  const bool forward = dir == Direction::kToDialect;
  const Script script = script_of(token);
  const DialectTag tag = DialectTag::of(forward ? Subdialect::kStandard : set.dialect);
  const auto analyses = analyzer_.analyze(token, tag);
  for (const MorphAnalysis& a : analyses) {
    if (a.zero_affix()) continue;
    if (std::any_of(analyses.begin(), analyses.end(),
                    [&](const MorphAnalysis& b) { return dominated(a, b); })) {
      continue;
    }
    MorphAnalysis out = a;
    bool matched = false;
    bool bijective = true;
    for (auto* list : {&out.prefixes, &out.suffixes}) {
      for (Morpheme& m : *list) {
        for (const RuleEntry& r : set.morph_rules) {
          if (r.category != m.category) continue;
          if (!forward && !r.bijective) continue;
          const SurfaceForm& from = forward ? r.standard : r.dialect_form;
          const SurfaceForm& to = forward ? r.dialect_form : r.standard;
          if (from.in(script) != m.surface) continue;
          m.surface = to.in(script);
          matched = true;
          bijective = bijective && r.bijective;
          break;
        }
      }
    }
    if (!matched) continue;
    std::string result = out.surface();
    if (result == token) continue;
    return Rewrite{0, 1, std::string(token), std::move(result), RuleKind::kMorph, bijective};
  }
  return std::nullopt;
}

TransductionResult Transducer::run(const NormalizedText& text, const DialectTag& tag,
                                   Direction dir) const {
  if (tag.is_standard()) return {text, {}};
  if (!tag.subdialect || tag.language != "ckb") {
    throw Error(ErrorKind::kUnsupportedDialect,
                "conversion needs a Central Kurdish subdialect, got '" + tag.to_string() + "'");
  }
  const RuleSet& set = rules_->rules_for(*tag.subdialect);
  const bool forward = dir == Direction::kToDialect;

  TransductionResult result;
  const std::size_t n = text.token_count();
  std::size_t i = 0;
  while (i < n) {
    std::optional<Rewrite> rw;
    for (RuleKind kind : {RuleKind::kTerm, RuleKind::kVocab}) {
      for (std::size_t len = std::min(set.longest_phrase, n - i); len >= 1 && !rw; --len) {
        std::string phrase(text.token(i));
        for (std::size_t k = 1; k < len; ++k) phrase += " " + std::string(text.token(i + k));
        const RuleEntry* e = set.find(kind, phrase, forward);
        if (e == nullptr) continue;
        const SurfaceForm& from = forward ? e->standard : e->dialect_form;
        const SurfaceForm& to = forward ? e->dialect_form : e->standard;
        std::string target = from.latin == phrase ? to.latin : to.arabic;
        if (target == phrase) continue;
        rw = Rewrite{i, len, phrase, std::move(target), kind, e->bijective};
      }
      if (rw) break;
    }
    if (!rw) {
      rw = rewrite_morph(text.token(i), set, dir);
      if (rw) rw->token = i;
    }
    if (rw) {
      i += rw->length;
      result.rewrites.push_back(std::move(*rw));
    } else {
      ++i;
    }
  }

  std::string out;
  std::size_t cursor = 0;
  for (const Rewrite& r : result.rewrites) {
    const TokenSpan& first = text.token_spans[r.token];
    const TokenSpan& last = text.token_spans[r.token + r.length - 1];
    out.append(text.text, cursor, first.begin - cursor);
    out += r.to;
    cursor = last.end;
  }
  out.append(text.text, cursor, std::string::npos);
  result.text = normalize(out);
  return result;
}

NormalizedText dialectalize(const NormalizedText& text, const DialectTag& target) {
  static const Transducer t;
  return t.dialectalize(text, target).text;
}

NormalizedText standardize(const NormalizedText& text, const DialectTag& source) {
  static const Transducer t;
  return t.standardize(text, source).text;
}

}  // namespace ckbvar
