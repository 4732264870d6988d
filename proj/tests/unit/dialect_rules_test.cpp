#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "ckbvar/dialect_rules.hpp"
#include "ckbvar/error.hpp"
#include "generators.hpp"

using namespace ckbvar;

namespace {

std::string dia(const std::string& s, const char* tag) {
  return dialectalize(normalize(s), DialectTag::parse(tag)).text;
}
std::string stdz(const std::string& s, const char* tag) {
  return standardize(normalize(s), DialectTag::parse(tag)).text;
}

}  // namespace

TEST(DialectTag, ParseForms) {
  EXPECT_EQ(DialectTag::parse("ckb-snn").to_string(), "ckb-snn");
  EXPECT_EQ(DialectTag::parse("Sanandaj").to_string(), "ckb-snn");
  EXPECT_EQ(DialectTag::parse("snn").to_string(), "ckb-snn");
  EXPECT_EQ(DialectTag::parse("ckb-s1m").to_string(), "ckb-slm");
  EXPECT_EQ(DialectTag::parse("ckb-hw1").to_string(), "ckb-hwl");
  EXPECT_EQ(DialectTag::parse("kmr").level(), TagLevel::kDialect);
  EXPECT_EQ(DialectTag::parse("ckb-mhb").level(), TagLevel::kSubdialect);
  const DialectTag t = DialectTag::parse("ckb-mhb");
  EXPECT_TRUE(t.dialect.has_value());
  EXPECT_EQ(t.language, "ckb");
  EXPECT_TRUE(DialectTag::parse("ckb").is_standard());
  EXPECT_THROW(DialectTag::parse("ckb-xyz"), Error);
}

TEST(Dialectalize, TableExamples) {
  EXPECT_EQ(dia("deçim", "ckb-slm"), "eçim");
  EXPECT_EQ(dia("jinan", "ckb-snn"), "jingel");
  EXPECT_EQ(dia("naw", "ckb-mhb"), "nêw");
  EXPECT_EQ(dia("xal", "ckb-hwl"), "xar");
}

TEST(Dialectalize, StandardTargetIsIdentity) {
  for (const char* s : {"deçim jinan naw", "ژنان دەچم", "", "xal, xoş!"}) {
    EXPECT_EQ(dia(s, "ckb"), normalize(s).text);
    EXPECT_EQ(dia(s, "ckb-std"), normalize(s).text);
  }
}

TEST(Dialectalize, UnsupportedDialect) {
  for (const char* t : {"kmr", "ckb-klr", "ckb-srd"}) {
    try {
      dia("naw", t);
      FAIL() << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedDialect) << t;
    }
  }
}

TEST(Dialectalize, NonBijectiveIsFlagged) {
  const TransductionResult r = Transducer().dialectalize(normalize("xal"), DialectTag::parse("ckb-hwl"));
  ASSERT_EQ(r.rewrites.size(), 1u);
  EXPECT_FALSE(r.rewrites[0].bijective);
  EXPECT_EQ(r.flagged().size(), 1u);
  EXPECT_EQ(stdz("xar", "ckb-hwl"), "xar");
}

TEST(Dialectalize, MultiwordEntry) {
  EXPECT_EQ(dia("ez bom hênay, naw.", "ckb-snn"), "ez hawirdim bot, naw.");
  EXPECT_EQ(stdz("ez hawirdim bot, naw.", "ckb-snn"), "ez bom hênay, naw.");
}

TEST(Dialectalize, TermBeatsVocabBeatsMorph) {
  const std::string rules =
      "vocab\tkitêban\tpirtûkan\tckb-snn\t1\n"
      "term\tkitêban\tkitabxane\tckb-snn\t1\n";
  MorphAnalyzer an;
  const RuleBook book = RuleBook::from_tsv(rules);
  const Transducer t(book, an);
  const auto r = t.dialectalize(normalize("kitêban"), DialectTag::parse("ckb-snn"));
  EXPECT_EQ(r.text.text, "kitabxane");
  EXPECT_EQ(r.rewrites[0].kind, RuleKind::kTerm);
  const std::string vocab_only = "vocab\tkitêban\tpirtûkan\tckb-snn\t1\nmorph\t-an\t-gel\tckb-snn\t1\tINDF_PL\n";
  const RuleBook book2 = RuleBook::from_tsv(vocab_only);
  EXPECT_EQ(Transducer(book2, an).dialectalize(normalize("kitêban"), DialectTag::parse("ckb-snn")).text.text,
            "pirtûkan");
  EXPECT_EQ(Transducer(book2, an).dialectalize(normalize("daran"), DialectTag::parse("ckb-snn")).text.text,
            "dargel");
}

TEST(Standardize, TableExamples) {
  EXPECT_EQ(stdz("eçim", "ckb-slm"), "deçim");
  EXPECT_EQ(stdz("keftin", "ckb-snn"), "kewtin");
  EXPECT_EQ(stdz("xîn", "ckb-hwl"), "xwên");
}

TEST(RuleBook, AmbiguousReverseDowngraded) {
  const std::string rules =
      "vocab\tbaran\twaran\tckb-snn\t1\n"
      "vocab\tbehar\twaran\tckb-snn\t1\n";
  const RuleBook book = RuleBook::from_tsv(rules);
  for (const auto& e : book.rules_for(Subdialect::kSanandaj).vocab_map) {
    EXPECT_FALSE(e.bijective);
    EXPECT_TRUE(e.declared_bijective);
  }
}

TEST(RuleBook, MorphCategoryMustExistOnBothSides) {
  EXPECT_THROW(RuleBook::from_tsv("morph\t-a\t-o\tckb-snn\t1\tADVERBIAL_E\n"), Error);
  EXPECT_THROW(RuleBook::from_tsv("morph\t-xyz\t-gel\tckb-snn\t1\tINDF_PL\n"), Error);
}

TEST(RuleBook, MalformedRowHasLine) {
  try {
    RuleBook::from_tsv("# comment\nvocab\tnaw\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(RuleBook, KalarAndSardashtHaveNoRules) {
  EXPECT_FALSE(RuleBook::builtin().covers(Subdialect::kKalar));
  EXPECT_THROW(RuleBook::builtin().rules_for(Subdialect::kSardasht), Error);
}

TEST(TransducerProperty, ConservativeAndStructurePreserving) {
  // Words from outside every rule source stay as they are, and the token
  // count survives single-token rewrites.
  std::mt19937 rng(99);
  const std::vector<std::string> filler = {"ez", "to", "min", "bo", "le", "u", "zor", ",", ".", "?", "ئەو", "بۆ"};
  const std::vector<std::string> rule_words = {"naw", "xal", "xoş", "deçim", "jinan", "xwên", "ziman", "jûjik"};
  for (int round = 0; round < 300; ++round) {
    std::string s;
    for (int i = 0; i < 8; ++i) {
      const bool rule = std::bernoulli_distribution(0.3)(rng);
      s += (s.empty() ? "" : " ") + gen::pick(rng, rule ? rule_words : filler);
    }
    for (const char* tag : {"ckb-slm", "ckb-snn", "ckb-hwl", "ckb-mhb"}) {
      const NormalizedText in = normalize(s);
      const auto r = Transducer().dialectalize(in, DialectTag::parse(tag));
      ASSERT_EQ(r.text.token_count(), in.token_count()) << s;
      std::vector<bool> touched(in.token_count(), false);
      for (const auto& rw : r.rewrites) touched[rw.token] = true;
      for (std::size_t i = 0; i < in.token_count(); ++i) {
        if (!touched[i]) ASSERT_EQ(r.text.token(i), in.token(i)) << s << " @" << tag;
        if (is_punctuation_token(in.token(i))) ASSERT_EQ(r.text.token(i), in.token(i));
      }
    }
  }
}

TEST(Similarity, IdenticalAndDisjoint) {
  const Wordlists same = Wordlists::from_tsv("id\tA\tB\n1\tnaw\tnaw\n2\txoş\txoş\n");
  EXPECT_DOUBLE_EQ(similarity_matrix(same).at("A", "B"), 100.0);
  const Wordlists diff = Wordlists::from_tsv("id\tA\tB\n1\tnaw\tnêw\n2\txoş\txweş\n");
  EXPECT_DOUBLE_EQ(similarity_matrix(diff).at("A", "B"), 0.0);
}

TEST(Similarity, NormalizesBeforeComparing) {
  const Wordlists w = Wordlists::from_tsv("id\tA\tB\n1\tكورد\tکورد\n");
  EXPECT_DOUBLE_EQ(similarity_matrix(w).at("A", "B"), 100.0);
}

TEST(Similarity, RaggedIsSchemaError) {
  try {
    Wordlists::from_tsv("id\tA\tB\n1\tnaw\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
  }
}

TEST(Similarity, BuiltinOrdering) {
  const SimilarityMatrix m = similarity_matrix(Wordlists::builtin());
  EXPECT_GT(m.at("Standard", "Sulaymaniyah"), m.at("Standard", "Erbil"));
  EXPECT_GT(m.at("Standard", "Sulaymaniyah"), m.at("Standard", "Mahabad"));
  EXPECT_LT(m.at("Standard", "Sanandaj"), m.at("Standard", "Erbil"));
  EXPECT_LT(m.at("Standard", "Sanandaj"), m.at("Standard", "Mahabad"));
}

TEST(SimilarityProperty, SymmetricDiagonalBounded) {
  std::mt19937 rng(5);
  const std::vector<std::string> pool = {"naw", "nêw", "xoş", "-", "✗", "", "jin", "ژن"};
  for (int round = 0; round < 200; ++round) {
    const int cols = std::uniform_int_distribution<int>(1, 5)(rng);
    const int rows = std::uniform_int_distribution<int>(1, 12)(rng);
    std::string tsv = "id";
    for (int c = 0; c < cols; ++c) tsv += "\tV" + std::to_string(c);
    tsv += "\n";
    for (int r = 0; r < rows; ++r) {
      tsv += std::to_string(r);
      for (int c = 0; c < cols; ++c) tsv += "\t" + gen::pick(rng, pool);
      tsv += "\n";
    }
    const SimilarityMatrix m = similarity_matrix(Wordlists::from_tsv(tsv));
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
      ASSERT_DOUBLE_EQ(m.values[i][i], 100.0);
      for (std::size_t j = 0; j < m.labels.size(); ++j) {
        ASSERT_EQ(m.values[i][j], m.values[j][i]);
        ASSERT_GE(m.values[i][j], 0.0);
        ASSERT_LE(m.values[i][j], 100.0);
      }
    }
  }
}
