#pragma once

// Hand-rolled generators for the property tests. Seeded std::mt19937 so a
// failing case can be replayed from the printed seed.

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ckbvar/dialect_rules.hpp"
#include "ckbvar/orthography.hpp"

namespace gen {

inline const std::vector<std::string>& consonants() {
  static const std::vector<std::string> c = {"b", "d", "f", "g", "h", "j", "k", "l", "m", "n",
                                             "p", "r", "s", "t", "v", "x", "z", "ç", "ş"};
  return c;
}

inline const std::vector<std::string>& vowels() {
  static const std::vector<std::string> v = {"a", "e", "o", "u", "ê", "î", "û"};
  return v;
}

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

// CVC or CVCVC, consonant at both ends.
inline std::string stem(std::mt19937& rng) {
  std::string s = pick(rng, consonants()) + pick(rng, vowels()) + pick(rng, consonants());
  if (std::bernoulli_distribution(0.5)(rng)) s += pick(rng, vowels()) + pick(rng, consonants());
  return s;
}

inline std::vector<std::string> distinct_stems(std::mt19937& rng, std::size_t n) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string s = stem(rng);
    if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

// Arbitrary text mixing both scripts, whitespace oddities, punctuation,
// ZWNJ, tatweel, harakat and Arabic yeh/kaf variants.
inline std::string messy_text(std::mt19937& rng, std::size_t pieces) {
  static const std::vector<std::string> parts = {
      "naw", "xoş", "ژن", "دەچم", " ", "  ", "\t", ",", ".", "؟", "!", "‌", "ـ", "َ",
      "ي", "ك", "ي", "ك", "ee", "ABC", "12", "٣", "‘", "(", ")", "-", "ێ", "ڵ", "ە", "x",
      "‌‌", "۰", " ", "ﻻ", "é"};
  std::string s;
  for (std::size_t i = 0; i < pieces; ++i) s += pick(rng, parts);
  return s;
}

// A Standard-side word exercising `entry`: the standard form for vocab and
// term entries, a synthetic stem carrying the affix for morph entries.
inline std::string word_for(const ckbvar::RuleEntry& entry, std::mt19937& rng) {
  using ckbvar::MorphCategory;
  if (entry.kind != ckbvar::RuleKind::kMorph) return entry.standard.latin;
  std::string affix = entry.standard.latin;
  auto strip = [](std::string a) {
    if (!a.empty() && (a.front() == '-' || a.front() == '=')) a.erase(0, 1);
    if (!a.empty() && a.back() == '-') a.pop_back();
    return a;
  };
  affix = strip(affix);
  const std::string s = stem(rng);
  switch (*entry.category) {
    case MorphCategory::kProg:
    case MorphCategory::kNeg:
    case MorphCategory::kSbjv:
      return affix + s + "im";
    case MorphCategory::kVsuffEwe:
      return s + "im" + affix;
    default:
      return s + affix;
  }
}

}  // namespace gen
