#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ckbvar {

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_tokens = 0;
  double wer_percent = 0.0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
};

// Unit-cost alignment; ties prefer substitution over a deletion/insertion
// pair. Throws undefined-metric on an empty reference.
WerBreakdown wer(std::span<const std::string> reference, std::span<const std::string> hypothesis);

// Pooled counts over line pairs; individual references may be empty but the
// total may not.
WerBreakdown corpus_wer(std::span<const std::vector<std::string>> references,
                        std::span<const std::vector<std::string>> hypotheses);

enum class BleuSmoothing { kNone, kFloor, kAddK, kExp };

struct BleuOptions {
  BleuSmoothing smoothing = BleuSmoothing::kExp;
  double smooth_value = 0.0;  // floor: 0.1, add-k: 1 when left at 0
  bool tokenize_13a = false;  // otherwise split on whitespace
  bool lowercase = false;
};

struct BleuScore {
  double score = 0.0;  // 0..100
  double brevity_penalty = 0.0;
  std::array<double, 4> precisions{};  // 0..100
  std::array<double, 4> correct{};
  std::array<double, 4> total{};
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
};

// references[k][i] is the k-th reference for hypothesis i.
BleuScore corpus_bleu(std::span<const std::string> hypotheses,
                      std::span<const std::vector<std::string>> references,
                      const BleuOptions& options = {});

// Pre-tokenized single segment.
double bleu(std::span<const std::vector<std::string>> references,
            std::span<const std::string> hypothesis);

// The "13a" tokenizer: punctuation split off, numbers kept together.
std::string tokenize_13a(std::string_view line);

struct ChrfOptions {
  int char_order = 6;
  double beta = 2.0;
  bool lowercase = false;
};

double corpus_chrf(std::span<const std::string> hypotheses,
                   std::span<const std::vector<std::string>> references,
                   const ChrfOptions& options = {});

double chrf(std::span<const std::string> references, std::string_view hypothesis,
            const ChrfOptions& options = {});

struct TranslationScore {
  double bleu = 0.0;
  double chrf2 = 0.0;
  double brevity_penalty = 0.0;
  std::array<double, 4> ngram_precisions{};
};

TranslationScore score_translations(std::span<const std::string> hypotheses,
                                    std::span<const std::vector<std::string>> references,
                                    const BleuOptions& bleu_options = {});

struct ClassScore {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  std::size_t predicted = 0;
};

struct F1Report {
  std::vector<ClassScore> classes;
  double macro_f1 = 0.0;     // over classes with support
  double weighted_f1 = 0.0;  // support-weighted
  double accuracy = 0.0;
};

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;  // [true][predicted]

// Labels default to "0", "1", ... when empty.
F1Report f1_scores(const ConfusionMatrix& confusion, std::span<const std::string> labels = {});

}  // namespace ckbvar
