#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ckbvar/dialect.hpp"
#include "ckbvar/dialect_rules.hpp"
#include "ckbvar/metrics.hpp"

namespace ckbvar {

enum class AdapterKind { kIdentity, kCommand, kHttp };

std::string_view adapter_kind_name(AdapterKind k);
AdapterKind parse_adapter_kind(std::string_view s);

struct AdapterConfig {
  std::string name = "identity";
  AdapterKind kind = AdapterKind::kIdentity;
  // kCommand: shell template with {src} {tgt} {input} {output}; input is a
  // file of one text per line, output must have as many lines.
  std::string command;
  // kHttp: POST {"source_lang","target_lang","texts"} -> {"translations"}.
  std::string url;
  std::string token_env;  // bearer token read from this variable
  double timeout_s = 60.0;

  std::size_t batch_size = 16;
  std::size_t parallelism = 1;
  std::size_t retries = 2;
  double min_interval_s = 0.0;  // between batch starts
  std::optional<std::filesystem::path> cache_dir;
};

// Batch text-in/text-out translator; output has the input's length and order.
class TranslatorAdapter {
 public:
  virtual ~TranslatorAdapter() = default;
  virtual std::vector<std::string> translate_batch(std::span<const std::string> texts,
                                                   std::string_view source_lang,
                                                   std::string_view target_lang) = 0;
};

std::unique_ptr<TranslatorAdapter> make_adapter(const AdapterConfig& config);

// Adds batching, caching, retries, rate limiting and bounded parallelism on
// top of an adapter.
class BatchTranslator {
 public:
  BatchTranslator(AdapterConfig config, std::unique_ptr<TranslatorAdapter> adapter);
  explicit BatchTranslator(const AdapterConfig& config)
      : BatchTranslator(config, make_adapter(config)) {}

  std::vector<std::string> translate(std::span<const std::string> texts,
                                     std::string_view source_lang, std::string_view target_lang);

  const AdapterConfig& config() const { return config_; }
  std::size_t cache_hits() const { return cache_hits_; }

 private:
  std::vector<std::string> run_batch(std::span<const std::string> texts, std::string_view src,
                                     std::string_view tgt);
  std::filesystem::path cache_path(std::string_view text, std::string_view src,
                                   std::string_view tgt) const;

  AdapterConfig config_;
  std::unique_ptr<TranslatorAdapter> adapter_;
  std::mutex pace_mutex_;
  std::chrono::steady_clock::time_point last_start_{};
  std::size_t cache_hits_ = 0;
};

enum class MtDirection { kToEnglish, kFromEnglish };
enum class MtMode { kBaseline, kPreprocess, kPostprocess };

std::string_view direction_name(MtDirection d);  // "ckb-en", "en-ckb"
MtDirection parse_direction(std::string_view s);
std::string_view mode_name(MtMode m);
MtMode parse_mode(std::string_view s);

struct MtExperiment {
  MtDirection direction = MtDirection::kFromEnglish;
  DialectTag dialect;
  MtMode mode = MtMode::kBaseline;
  std::vector<std::string> sources;
  std::vector<std::string> references;
  BleuOptions bleu;
};

struct MtReportRow {
  std::string dialect;
  std::string direction;
  std::string system;
  std::string mode;
  TranslationScore score;
  // configuration echoed for reproducibility
  std::string adapter_kind;
  std::size_t sentences = 0;
  std::string tokenize;
  std::string scoring = "corpus";
};

// Preprocess (standardize the source) is only valid into English, and
// postprocess (dialectalize the output) only out of English. Kurdish-side
// hypotheses and references are normalized before scoring.
MtReportRow run_mt_experiment(const MtExperiment& experiment, BatchTranslator& translator,
                              const Transducer& transducer = Transducer());

std::string report_csv(std::span<const MtReportRow> rows);
// Table layout: one row per dialect, a BLEU and chrF2 column for each
// (system, direction, mode).
std::string report_wide_csv(std::span<const MtReportRow> rows);
std::string report_json(std::span<const MtReportRow> rows);

// JSON experiment file; see the README for the schema. Relative paths are
// resolved against the file's directory.
std::vector<MtReportRow> run_experiment_file(const std::filesystem::path& config_json);

}  // namespace ckbvar
