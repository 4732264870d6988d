#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ckbvar/dialect.hpp"
#include "ckbvar/orthography.hpp"

namespace ckbvar {

struct Cue {
  std::size_t index = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;      // lines joined by one space
  std::size_t line = 0;  // of the index line

  double start_s() const { return static_cast<double>(start_ms) / 1000.0; }
  double end_s() const { return static_cast<double>(end_ms) / 1000.0; }
};

// Throws ParseError on a bad timecode, end <= start, or an index that does
// not increase.
std::vector<Cue> parse_srt(std::string_view text);

enum class SpeakerAge { kUnknown, kAdult, kChild };
enum class SpeakerGender { kUnknown, kMasculine, kFeminine };

std::string_view age_name(SpeakerAge a);
std::string_view gender_name(SpeakerGender g);
SpeakerAge parse_age(std::string_view s);
SpeakerGender parse_gender(std::string_view s);

// Annotation words per value, matched case-insensitively. JSON layout:
// {"age": {"adult": [...], "child": [...]},
//  "gender": {"masculine": [...], "feminine": [...]}}
struct SpeakerAliases {
  std::map<std::string, SpeakerAge> age;
  std::map<std::string, SpeakerGender> gender;

  static SpeakerAliases from_json(std::string_view json);
  static const SpeakerAliases& builtin();
  void merge(const SpeakerAliases& other);
};

struct SpeakerInfo {
  SpeakerAge age = SpeakerAge::kUnknown;
  SpeakerGender gender = SpeakerGender::kUnknown;
  std::string text;
};

// A leading "(...)" is consumed when any of its words is a known alias, or
// when nothing follows it. Otherwise the text is returned as is.
SpeakerInfo extract_speaker(std::string_view cue_text,
                            const SpeakerAliases& aliases = SpeakerAliases::builtin());

enum class Genre { kComedy, kDrama };

std::string_view genre_name(Genre g);
Genre parse_genre(std::string_view s);

struct EpisodeMetadata {
  std::string id;
  std::string title;
  Genre genre = Genre::kDrama;
  DialectTag dialect;
  std::optional<std::string> source_url;
  std::string media;                        // source media for the cut manifest
  std::optional<double> audio_duration_s;   // enables the beyond-audio check
};

struct Utterance {
  std::string id;  // <episode>_<index>
  std::size_t index = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  NormalizedText text;
  SpeakerAge speaker_age = SpeakerAge::kUnknown;
  SpeakerGender speaker_gender = SpeakerGender::kUnknown;
  std::optional<std::string> audio_file;
  DialectTag dialect;
  std::vector<std::string> flags;

  double start_s() const { return static_cast<double>(start_ms) / 1000.0; }
  double end_s() const { return static_cast<double>(end_ms) / 1000.0; }
  double duration_s() const { return static_cast<double>(end_ms - start_ms) / 1000.0; }
  bool has_speaker_metadata() const {
    return speaker_age != SpeakerAge::kUnknown || speaker_gender != SpeakerGender::kUnknown;
  }
};

struct Episode {
  EpisodeMetadata meta;
  std::vector<Utterance> utterances;
};

struct CutRow {
  std::string source;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string segment_name;
};

struct Corpus {
  std::vector<Episode> episodes;
  std::vector<CutRow> manifest;
  std::vector<std::string> log;  // exclusions and warnings

  std::vector<const Utterance*> utterances() const;
};

struct EpisodeInput {
  EpisodeMetadata meta;
  std::string srt;
};

struct BuildOptions {
  double min_duration_s = 0.2;
};

Corpus build_corpus(std::span<const EpisodeInput> inputs, const BuildOptions& options = {},
                    const SpeakerAliases& aliases = SpeakerAliases::builtin());

// Episode metadata JSON: {"episodes": [{"id", "title", "genre", "dialect",
// "srt", "media"?, "source_url"?, "audio_duration_s"?}]}. srt paths are
// relative to the metadata file.
std::vector<EpisodeInput> load_episode_inputs(const std::filesystem::path& metadata_json);

// Layout: metadata.json, manifest.csv, build.log, <episode>/utterances.json.
void write_corpus(const Corpus& corpus, const std::filesystem::path& root);
Corpus read_corpus(const std::filesystem::path& root);

std::string manifest_csv(std::span<const CutRow> rows);

// Runs `command` once per row with {source} {start} {end} {output}
// substituted (shell-quoted). Returns the number of failed rows.
std::size_t run_slicer(std::span<const CutRow> rows, std::string_view command,
                       const std::filesystem::path& out_dir);

struct StatsRow {
  std::string dialect;  // "total" for the last row
  std::size_t utterances = 0;
  double hours = 0.0;
  double avg_tokens = 0.0;   // non-punctuation tokens
  double avg_seconds = 0.0;
  double speaker_metadata_pct = 0.0;
};

std::vector<StatsRow> corpus_stats(const Corpus& corpus);
std::string stats_csv(std::span<const StatsRow> rows);

struct SplitSpec {
  std::map<std::string, std::size_t> test_sizes;  // by dialect tag string
  std::optional<std::size_t> default_test_size;
  double validation_fraction = 0.1;
  double min_duration_s = 0.2;

  // The ASR setup: 500 for Mahabad and Sanandaj, 2000 for Erbil and
  // Sulaymaniyah.
  static SplitSpec asr_default();
};

struct Split {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

// Per dialect: shuffle ids, take the test set, then validation as a share of
// the rest. Listings are returned sorted.
Split split_corpus(const Corpus& corpus, const SplitSpec& spec, std::uint64_t seed);

struct ListingEntry {
  std::string label;
  std::string value;
  std::size_t repetition = 0;  // 0 for the original line
};

enum class UpsampleStrategy { kCycle };

// Minority classes are repeated in listing order until every class matches
// the largest one.
std::vector<ListingEntry> upsample(std::span<const ListingEntry> listing,
                                   UpsampleStrategy strategy = UpsampleStrategy::kCycle);

struct LidSplit {
  std::vector<ListingEntry> train;  // label = dialect tag, value = text
  std::vector<ListingEntry> test;
};

// Per-dialect test share of utterance texts for identification.
LidSplit lid_split(const Corpus& corpus, double test_fraction, std::uint64_t seed,
                   bool upsample_train);

}  // namespace ckbvar
