#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ckbvar/dialect.hpp"
#include "ckbvar/metrics.hpp"
#include "ckbvar/orthography.hpp"

namespace ckbvar {

struct LidConfig {
  int ngram_min = 2;
  int ngram_max = 6;
  int dim = 64;
  int epochs = 25;
  double learning_rate = 1.0;
  std::uint32_t buckets = 1u << 21;
  std::uint64_t seed = 0;
  bool word_unigrams = true;

  void validate() const;  // throws invalid-input
};

struct LabeledExample {
  NormalizedText text;
  std::string label;
};

// `label \t text` per line; blank lines skipped.
std::vector<LabeledExample> parse_labeled_examples(std::string_view contents);

// Character n-grams of each token wrapped in ^...$, then the tokens
// themselves. Exposed for inspection; featurize() hashes exactly these.
std::vector<std::string> feature_strings(const NormalizedText& text, const LidConfig& config);

// FNV-1a of each feature string modulo buckets. Word unigrams are hashed
// with a leading 0x01 byte so they never share a bucket id with an n-gram
// of the same spelling.
std::vector<std::uint32_t> featurize(const NormalizedText& text, const LidConfig& config);

struct Prediction {
  std::string label;
  double probability = 0.0;
};

struct LidEvaluation {
  std::vector<std::string> labels;
  ConfusionMatrix confusion;  // [true][predicted]
  F1Report f1;
};

// Linear softmax classifier over the mean of feature embeddings (the
// fastText supervised model with a flat softmax).
class LidModel {
 public:
  // Level is inferred from the labels when not given.
  static LidModel train(std::span<const LabeledExample> examples, const LidConfig& config = {},
                        std::optional<TagLevel> level = std::nullopt);

  std::vector<double> probabilities(const NormalizedText& text) const;
  std::vector<Prediction> predict(const NormalizedText& text, std::size_t k = 1) const;
  LidEvaluation evaluate(std::span<const LabeledExample> test) const;

  std::string serialize() const;
  static LidModel deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static LidModel load(const std::filesystem::path& path);

  const LidConfig& config() const { return config_; }
  const std::vector<std::string>& labels() const { return labels_; }
  TagLevel level() const { return level_; }
  double training_accuracy() const { return training_accuracy_; }
  std::size_t rows() const { return row_bucket_.size(); }

 private:
  std::vector<float> hidden(const std::vector<std::uint32_t>& features) const;

  LidConfig config_;
  TagLevel level_ = TagLevel::kSubdialect;
  std::vector<std::string> labels_;
  // Only buckets seen in training get a row; others contribute nothing.
  std::vector<std::uint32_t> row_bucket_;
  std::unordered_map<std::uint32_t, std::uint32_t> row_of_;
  std::vector<float> input_;   // rows x dim
  std::vector<float> output_;  // labels x dim
  double training_accuracy_ = 0.0;
};

}  // namespace ckbvar
