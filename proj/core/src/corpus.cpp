#include "ckbvar/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <set>

#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/random.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"
#include "json.hpp"

namespace ckbvar {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string_view s) {
  std::u32string cps = utf8::decode(s);
  for (char32_t& c : cps) {
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    else if (c == U'Ê') c = U'ê';
    else if (c == U'Î') c = U'î';
    else if (c == U'Û') c = U'û';
    else if (c == U'Ç') c = U'ç';
    else if (c == U'Ş') c = U'ş';
  }
  return utf8::encode(cps);
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string seconds(std::int64_t ms) { return fmt::format("{:.3f}", static_cast<double>(ms) / 1000.0); }

std::int64_t to_ms(double s) { return std::llround(s * 1000.0); }

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<Cue> parse_srt(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  static const std::regex timecode(
      R"(^\s*(\d+):(\d{2}):(\d{2})[,.](\d{3})\s*-->\s*(\d+):(\d{2}):(\d{2})[,.](\d{3})\s*$)");
  const auto lines = split_lines(text);
  std::vector<Cue> cues;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    Cue cue;
    cue.line = i + 1;
    const std::string index = trim(lines[i]);
    if (index.empty() || !std::all_of(index.begin(), index.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(i + 1, "expected a cue index, found '" + index + "'");
    }
    cue.index = std::stoul(index);
    if (!cues.empty() && cue.index <= cues.back().index) {
      throw ParseError(i + 1, fmt::format("cue index {} does not follow {}", cue.index, cues.back().index));
    }
    ++i;
    std::smatch m;
    if (i >= lines.size() || !std::regex_match(lines[i], m, timecode)) {
      throw ParseError(i + 1, "malformed timecode line");
    }
    auto ms = [&](int base) {
      return ((std::stoll(m[base]) * 60 + std::stoll(m[base + 1])) * 60 + std::stoll(m[base + 2])) * 1000 +
             std::stoll(m[base + 3]);
    };
    cue.start_ms = ms(1);
    cue.end_ms = ms(5);
    if (std::stoll(m[3]) > 59 || std::stoll(m[7]) > 59 || std::stoll(m[2]) > 59 || std::stoll(m[6]) > 59) {
      throw ParseError(i + 1, "malformed timecode line");
    }
    if (cue.end_ms <= cue.start_ms) throw ParseError(i + 1, "cue ends before it starts");
    ++i;
    while (i < lines.size() && !trim(lines[i]).empty()) {
      const std::string part = trim(lines[i]);
      cue.text += (cue.text.empty() ? "" : " ") + part;
      ++i;
    }
    cues.push_back(std::move(cue));
  }
  return cues;
}

std::string_view age_name(SpeakerAge a) {
  switch (a) {
    case SpeakerAge::kAdult: return "adult";
    case SpeakerAge::kChild: return "child";
    case SpeakerAge::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view gender_name(SpeakerGender g) {
  switch (g) {
    case SpeakerGender::kMasculine: return "masculine";
    case SpeakerGender::kFeminine: return "feminine";
    case SpeakerGender::kUnknown: return "unknown";
  }
  return "unknown";
}

SpeakerAge parse_age(std::string_view s) {
  if (s == "adult") return SpeakerAge::kAdult;
  if (s == "child") return SpeakerAge::kChild;
  if (s == "unknown" || s.empty()) return SpeakerAge::kUnknown;
  throw Error(ErrorKind::kSchema, "unknown speaker age '" + std::string(s) + "'");
}

SpeakerGender parse_gender(std::string_view s) {
  if (s == "masculine") return SpeakerGender::kMasculine;
  if (s == "feminine") return SpeakerGender::kFeminine;
  if (s == "unknown" || s.empty()) return SpeakerGender::kUnknown;
  throw Error(ErrorKind::kSchema, "unknown speaker gender '" + std::string(s) + "'");
}

SpeakerAliases SpeakerAliases::from_json(std::string_view text) {
  SpeakerAliases out;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::kSchema, "speaker aliases: expected an object");
    for (const auto& [key, _] : j.items()) {
      if (key != "age" && key != "gender") throw Error(ErrorKind::kSchema, "speaker aliases: unknown key '" + key + "'");
    }
    const json ages = j.value("age", json::object());
    const json genders = j.value("gender", json::object());
    for (const auto& [key, words] : ages.items()) {
      const SpeakerAge a = parse_age(key);
      for (const auto& w : words) out.age.emplace(lower(w.get<std::string>()), a);
    }
    for (const auto& [key, words] : genders.items()) {
      const SpeakerGender g = parse_gender(key);
      for (const auto& w : words) out.gender.emplace(lower(w.get<std::string>()), g);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, std::string("speaker aliases: ") + e.what());
  }
  return out;
}

const SpeakerAliases& SpeakerAliases::builtin() {
  static const SpeakerAliases aliases = from_json(embedded_data("speaker_aliases.json").value());
  return aliases;
}

void SpeakerAliases::merge(const SpeakerAliases& other) {
  for (const auto& [k, v] : other.age) age[k] = v;
  for (const auto& [k, v] : other.gender) gender[k] = v;
}

SpeakerInfo extract_speaker(std::string_view cue_text, const SpeakerAliases& aliases) {
  SpeakerInfo info;
  const std::string text = trim(cue_text);
  info.text = text;
  if (!text.starts_with("(")) return info;
  const std::size_t close = text.find(')');
  if (close == std::string::npos) return info;
  const std::string inner = text.substr(1, close - 1);
  const std::string rest = trim(std::string_view(text).substr(close + 1));

  SpeakerAge age = SpeakerAge::kUnknown;
  SpeakerGender gender = SpeakerGender::kUnknown;
  bool recognized = false;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    const std::string key = lower(word);
    if (auto it = aliases.age.find(key); it != aliases.age.end() && age == SpeakerAge::kUnknown) {
      age = it->second;
      recognized = true;
    }
    if (auto it = aliases.gender.find(key); it != aliases.gender.end() && gender == SpeakerGender::kUnknown) {
      gender = it->second;
      recognized = true;
    }
    word.clear();
  };
  for (char32_t c : utf8::decode(inner)) {
    if (c == U',' || c == U'،' || c == U'/' || c == U';' || utf8::is_space(c)) {
      flush();
    } else {
      word += utf8::encode(c);
    }
  }
  flush();
  if (recognized) {
    info.age = age;
    info.gender = gender;
    info.text = rest;
  } else if (rest.empty()) {
    info.text.clear();
  }
  return info;
}

std::string_view genre_name(Genre g) { return g == Genre::kComedy ? "comedy" : "drama"; }

Genre parse_genre(std::string_view s) {
  const std::string l = utf8::to_lower_ascii(s);
  if (l == "comedy") return Genre::kComedy;
  if (l == "drama") return Genre::kDrama;
  throw Error(ErrorKind::kSchema, "genre must be comedy or drama, got '" + std::string(s) + "'");
}

std::vector<const Utterance*> Corpus::utterances() const {
  std::vector<const Utterance*> out;
  for (const auto& ep : episodes) {
    for (const auto& u : ep.utterances) out.push_back(&u);
  }
  return out;
}

Corpus build_corpus(std::span<const EpisodeInput> inputs, const BuildOptions& options,
                    const SpeakerAliases& aliases) {
  Corpus corpus;
  std::set<std::string> ids;
  const std::int64_t min_ms = to_ms(options.min_duration_s);
  for (const EpisodeInput& in : inputs) {
    const EpisodeMetadata& meta = in.meta;
    if (meta.id.empty()) throw Error(ErrorKind::kSchema, "episode without an id");
    if (!ids.insert(meta.id).second) throw Error(ErrorKind::kSchema, "duplicate episode id " + meta.id);
    if (!meta.dialect.subdialect || meta.dialect.is_standard()) {
      throw Error(ErrorKind::kSchema, "episode " + meta.id + " needs a CORDI subdialect");
    }
    Episode ep;
    ep.meta = meta;
    std::vector<Cue> cues;
    try {
      cues = parse_srt(in.srt);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), meta.id + ": " + e.what());
    }
    if (cues.empty()) corpus.log.push_back(fmt::format("warning\t{}\tempty transcription", meta.id));
    for (const Cue& cue : cues) {
      const std::string uid = fmt::format("{}_{}", meta.id, cue.index);
      if (cue.end_ms - cue.start_ms < min_ms) {
        corpus.log.push_back(fmt::format("excluded\t{}\tduration {} s below {} s", uid,
                                         seconds(cue.end_ms - cue.start_ms), options.min_duration_s));
        continue;
      }
      SpeakerInfo speaker = extract_speaker(cue.text, aliases);
      NormalizedText text = normalize(speaker.text);
      if (text.token_count() == 0) {
        corpus.log.push_back(fmt::format("excluded\t{}\tempty text", uid));
        continue;
      }
      Utterance u;
      u.id = uid;
      u.index = cue.index;
      u.start_ms = cue.start_ms;
      u.end_ms = cue.end_ms;
      u.text = std::move(text);
      u.speaker_age = speaker.age;
      u.speaker_gender = speaker.gender;
      u.audio_file = uid + ".ogg";
      u.dialect = meta.dialect;
      if (meta.audio_duration_s && cue.end_ms > to_ms(*meta.audio_duration_s)) {
        u.flags.push_back("beyond-audio");
        corpus.log.push_back(fmt::format("warning\t{}\tends at {} s, audio is {} s", uid,
                                         seconds(cue.end_ms), *meta.audio_duration_s));
      }
      corpus.manifest.push_back({meta.media.empty() ? meta.id : meta.media, cue.start_ms, cue.end_ms,
                                 *u.audio_file});
      ep.utterances.push_back(std::move(u));
    }
    corpus.episodes.push_back(std::move(ep));
  }
  return corpus;
}

namespace {

EpisodeMetadata metadata_from_json(const json& e) {
  EpisodeMetadata m;
  m.id = e.at("id").get<std::string>();
  m.title = e.value("title", std::string());
  m.genre = parse_genre(e.at("genre").get<std::string>());
  m.dialect = DialectTag::parse(e.at("dialect").get<std::string>());
  if (e.contains("source_url") && !e["source_url"].is_null()) {
    m.source_url = e["source_url"].get<std::string>();
  }
  m.media = e.value("media", std::string());
  if (e.contains("audio_duration_s") && !e["audio_duration_s"].is_null()) {
    m.audio_duration_s = e["audio_duration_s"].get<double>();
  }
  return m;
}

json metadata_to_json(const EpisodeMetadata& m) {
  json e = {{"id", m.id},
            {"title", m.title},
            {"genre", genre_name(m.genre)},
            {"dialect", m.dialect.to_string()},
            {"source_url", m.source_url ? json(*m.source_url) : json(nullptr)},
            {"media", m.media}};
  if (m.audio_duration_s) e["audio_duration_s"] = *m.audio_duration_s;
  return e;
}

}  // namespace

std::vector<EpisodeInput> load_episode_inputs(const std::filesystem::path& metadata_json) {
  const json j = read_json(metadata_json);
  std::vector<EpisodeInput> out;
  try {
    for (const auto& e : j.at("episodes")) {
      EpisodeInput in;
      in.meta = metadata_from_json(e);
      std::filesystem::path srt = e.at("srt").get<std::string>();
      if (srt.is_relative()) srt = metadata_json.parent_path() / srt;
      in.srt = read_file(srt);
      out.push_back(std::move(in));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, metadata_json.string() + ": " + e.what());
  }
  return out;
}

std::string manifest_csv(std::span<const CutRow> rows) {
  std::string out = "source,start_s,end_s,segment_name\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.source, seconds(r.start_ms), seconds(r.end_ms), r.segment_name);
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& root) {
  std::filesystem::create_directories(root);
  json meta = {{"episodes", json::array()}};
  for (const Episode& ep : corpus.episodes) {
    meta["episodes"].push_back(metadata_to_json(ep.meta));
    json utts = json::array();
    for (const Utterance& u : ep.utterances) {
      utts.push_back({{"id", u.id},
                      {"index", u.index},
                      {"start_s", static_cast<double>(u.start_ms) / 1000.0},
                      {"end_s", static_cast<double>(u.end_ms) / 1000.0},
                      {"text", u.text.text},
                      {"audio", u.audio_file ? json(*u.audio_file) : json(nullptr)},
                      {"age", age_name(u.speaker_age)},
                      {"gender", gender_name(u.speaker_gender)},
                      {"flags", u.flags}});
    }
    const std::filesystem::path dir = root / ep.meta.id;
    std::filesystem::create_directories(dir);
    write_file(dir / "utterances.json",
               json({{"episode", ep.meta.id}, {"utterances", utts}}).dump(2) + "\n");
  }
  write_file(root / "metadata.json", meta.dump(2) + "\n");
  write_file(root / "manifest.csv", manifest_csv(corpus.manifest));
  std::string log;
  for (const auto& l : corpus.log) log += l + "\n";
  write_file(root / "build.log", log);
}

Corpus read_corpus(const std::filesystem::path& root) {
  Corpus corpus;
  const json meta = read_json(root / "metadata.json");
  try {
    for (const auto& e : meta.at("episodes")) {
      Episode ep;
      ep.meta = metadata_from_json(e);
      const json utts = read_json(root / ep.meta.id / "utterances.json");
      for (const auto& j : utts.at("utterances")) {
        Utterance u;
        u.id = j.at("id").get<std::string>();
        u.index = j.at("index").get<std::size_t>();
        u.start_ms = to_ms(j.at("start_s").get<double>());
        u.end_ms = to_ms(j.at("end_s").get<double>());
        u.text = normalize(j.at("text").get<std::string>());
        if (!j.at("audio").is_null()) u.audio_file = j["audio"].get<std::string>();
        u.speaker_age = parse_age(j.value("age", std::string("unknown")));
        u.speaker_gender = parse_gender(j.value("gender", std::string("unknown")));
        u.flags = j.value("flags", std::vector<std::string>{});
        u.dialect = ep.meta.dialect;
        if (u.audio_file) {
          corpus.manifest.push_back({ep.meta.media.empty() ? ep.meta.id : ep.meta.media, u.start_ms,
                                     u.end_ms, *u.audio_file});
        }
        ep.utterances.push_back(std::move(u));
      }
      corpus.episodes.push_back(std::move(ep));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, root.string() + ": " + e.what());
  }
  return corpus;
}

std::size_t run_slicer(std::span<const CutRow> rows, std::string_view command,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::size_t failed = 0;
  for (const CutRow& r : rows) {
    std::string cmd(command);
    auto sub = [&](std::string_view key, const std::string& value) {
      std::size_t pos = 0;
      while ((pos = cmd.find(key, pos)) != std::string::npos) {
        cmd.replace(pos, key.size(), value);
        pos += value.size();
      }
    };
    sub("{source}", shell_quote(r.source));
    sub("{start}", seconds(r.start_ms));
    sub("{end}", seconds(r.end_ms));
    sub("{output}", shell_quote((out_dir / r.segment_name).string()));
    if (std::system(cmd.c_str()) != 0) ++failed;
  }
  return failed;
}

std::vector<StatsRow> corpus_stats(const Corpus& corpus) {
  struct Acc {
    std::size_t n = 0, tokens = 0, with_meta = 0;
    std::int64_t ms = 0;
  };
  std::map<std::string, Acc> by_dialect;
  Acc total;
  for (const Utterance* u : corpus.utterances()) {
    std::size_t tokens = 0;
    for (std::size_t t = 0; t < u->text.token_count(); ++t) {
      if (!is_punctuation_token(u->text.token(t))) ++tokens;
    }
    for (Acc* a : {&by_dialect[u->dialect.to_string()], &total}) {
      ++a->n;
      a->tokens += tokens;
      a->ms += u->end_ms - u->start_ms;
      if (u->has_speaker_metadata()) ++a->with_meta;
    }
  }
  std::vector<StatsRow> rows;
  if (total.n == 0) return rows;
  auto row = [](const std::string& name, const Acc& a) {
    const double n = static_cast<double>(a.n);
    return StatsRow{name,
                    a.n,
                    static_cast<double>(a.ms) / 3.6e6,
                    static_cast<double>(a.tokens) / n,
                    static_cast<double>(a.ms) / 1000.0 / n,
                    100.0 * static_cast<double>(a.with_meta) / n};
  };
  for (const auto& [d, a] : by_dialect) rows.push_back(row(d, a));
  rows.push_back(row("total", total));
  return rows;
}

std::string stats_csv(std::span<const StatsRow> rows) {
  std::string out = "dialect,utterances,hours,avg_tokens,avg_seconds,speaker_metadata_pct\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.4f},{:.2f},{:.2f},{:.2f}\n", r.dialect, r.utterances, r.hours,
                       r.avg_tokens, r.avg_seconds, r.speaker_metadata_pct);
  }
  return out;
}

SplitSpec SplitSpec::asr_default() {
  SplitSpec s;
  s.test_sizes = {{"ckb-mhb", 500}, {"ckb-snn", 500}, {"ckb-hwl", 2000}, {"ckb-slm", 2000}};
  return s;
}

namespace {

// Utterance ids per dialect, sorted.
std::map<std::string, std::vector<const Utterance*>> group_by_dialect(const Corpus& corpus,
                                                                      double min_duration_s) {
  std::map<std::string, std::vector<const Utterance*>> out;
  const std::int64_t min_ms = to_ms(min_duration_s);
  for (const Utterance* u : corpus.utterances()) {
    if (u->end_ms - u->start_ms < min_ms || u->text.token_count() == 0) continue;
    out[u->dialect.to_string()].push_back(u);
  }
  for (auto& [d, list] : out) {
    std::sort(list.begin(), list.end(), [](const Utterance* a, const Utterance* b) { return a->id < b->id; });
  }
  return out;
}

}  // namespace

Split split_corpus(const Corpus& corpus, const SplitSpec& spec, std::uint64_t seed) {
  if (!(spec.validation_fraction > 0.0 && spec.validation_fraction < 1.0)) {
    throw Error(ErrorKind::kSplit, "validation fraction must be in (0, 1)");
  }
  Rng rng(seed);
  Split split;
  for (auto& [dialect, list] : group_by_dialect(corpus, spec.min_duration_s)) {
    std::size_t test_size = 0;
    if (auto it = spec.test_sizes.find(dialect); it != spec.test_sizes.end()) {
      test_size = it->second;
    } else if (spec.default_test_size) {
      test_size = *spec.default_test_size;
    } else {
      throw Error(ErrorKind::kSplit, "no test size given for " + dialect);
    }
    if (test_size > list.size()) {
      throw Error(ErrorKind::kSplit, fmt::format("{}: test size {} exceeds {} utterances", dialect,
                                                 test_size, list.size()));
    }
    rng.shuffle(std::span<const Utterance*>(list));
    const std::size_t rest = list.size() - test_size;
    const auto val = static_cast<std::size_t>(std::llround(spec.validation_fraction * static_cast<double>(rest)));
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto& target = i < test_size ? split.test : (i < test_size + val ? split.validation : split.train);
      target.push_back(list[i]->id);
    }
  }
  for (auto* v : {&split.train, &split.validation, &split.test}) std::sort(v->begin(), v->end());
  return split;
}

std::vector<ListingEntry> upsample(std::span<const ListingEntry> listing, UpsampleStrategy) {
  std::map<std::string, std::vector<const ListingEntry*>> by_label;
  for (const auto& e : listing) by_label[e.label].push_back(&e);
  std::size_t largest = 0;
  for (const auto& [l, v] : by_label) largest = std::max(largest, v.size());
  std::vector<ListingEntry> out(listing.begin(), listing.end());
  for (const auto& [label, entries] : by_label) {
    for (std::size_t k = entries.size(); k < largest; ++k) {
      ListingEntry copy = *entries[k % entries.size()];
      copy.repetition = k / entries.size();
      out.push_back(std::move(copy));
    }
  }
  return out;
}

LidSplit lid_split(const Corpus& corpus, double test_fraction, std::uint64_t seed, bool upsample_train) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::kSplit, "test fraction must be in (0, 1)");
  }
  Rng rng(seed);
  LidSplit out;
  for (auto& [dialect, list] : group_by_dialect(corpus, 0.0)) {
    rng.shuffle(std::span<const Utterance*>(list));
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(list.size())));
    std::vector<const Utterance*> test(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<const Utterance*> train(list.begin() + static_cast<std::ptrdiff_t>(n_test), list.end());
    auto by_id = [](const Utterance* a, const Utterance* b) { return a->id < b->id; };
    std::sort(test.begin(), test.end(), by_id);
    std::sort(train.begin(), train.end(), by_id);
    for (const Utterance* u : test) out.test.push_back({dialect, u->text.text, 0});
    for (const Utterance* u : train) out.train.push_back({dialect, u->text.text, 0});
  }
  if (upsample_train) out.train = upsample(out.train);
  return out;
}

}  // namespace ckbvar
