// ckbvar: command-line front end for the Central Kurdish variety toolkit.

#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckbvar/corpus.hpp"
#include "ckbvar/dialect.hpp"
#include "ckbvar/dialect_rules.hpp"
#include "ckbvar/embedded_data.hpp"
#include "ckbvar/error.hpp"
#include "ckbvar/harness.hpp"
#include "ckbvar/lid.hpp"
#include "ckbvar/metrics.hpp"
#include "ckbvar/morphology.hpp"
#include "ckbvar/orthography.hpp"
#include "ckbvar/tsv.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ckbvar;

namespace {

std::vector<std::string> input_lines(const std::string& path) {
  std::string contents;
  if (path.empty() || path == "-") {
    contents.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    contents = read_file(path);
  }
  return split_lines(contents);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

// Tables shared by the conversion commands.
struct Tables {
  std::vector<std::string> rule_files;
  std::string morpheme_file;

  std::unique_ptr<MorphemeInventory> inventory;
  std::unique_ptr<RuleBook> rules;

  void load() {
    inventory = std::make_unique<MorphemeInventory>(
        morpheme_file.empty() ? MorphemeInventory::builtin()
                              : MorphemeInventory::from_tsv(read_file(morpheme_file)));
    rules = std::make_unique<RuleBook>(RuleBook::from_tsv(
        std::string(embedded_data("rules.tsv").value()), *inventory));
    for (const auto& f : rule_files) rules->merge(RuleBook::from_tsv(read_file(f), *inventory));
  }
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Central Kurdish variety toolkit", "ckbvar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ckbvar 0.1.0");

  std::string input, output, format = "csv";

  // normalize
  bool strip_zwnj = false, show_tokens = false;
  auto* normalize_cmd = app.add_subcommand("normalize", "Clean up orthography, one line at a time");
  normalize_cmd->add_option("--input", input, "Input file (default stdin)");
  normalize_cmd->add_flag("--strip-zwnj", strip_zwnj, "Remove every zero-width non-joiner");
  normalize_cmd->add_flag("--tokens", show_tokens, "Print tokens separated by ' | '");
  normalize_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json", "csv"}));

  // transliterate
  std::string to_script = "latin";
  auto* translit_cmd = app.add_subcommand("transliterate", "Convert between Arabic and Latin script");
  translit_cmd->add_option("--to", to_script, "Target script")->check(CLI::IsMember({"latin", "arabic"}));
  translit_cmd->add_option("--input", input, "Input file (default stdin)");

  // dialectalize / standardize
  Tables tables;
  std::string target, source;
  bool report_rewrites = false;
  auto* dia_cmd = app.add_subcommand("dialectalize", "Convert Standard text into a subdialect");
  dia_cmd->add_option("--target", target, "Target tag, e.g. ckb-snn")->required();
  auto* std_cmd = app.add_subcommand("standardize", "Convert subdialect text into Standard");
  std_cmd->add_option("--source", source, "Source tag, e.g. ckb-slm")->required();
  for (auto* cmd : {dia_cmd, std_cmd}) {
    cmd->add_option("--input", input, "Input file (default stdin)");
    cmd->add_option("--rules", tables.rule_files, "Extra rule TSV files")->check(CLI::ExistingFile);
    cmd->add_option("--morphemes", tables.morpheme_file, "Replacement morpheme inventory")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--report", report_rewrites, "Write one JSON line per rewrite to stderr");
  }

  // morph-analyze
  std::string morph_dialect = "ckb";
  std::vector<std::string> words;
  auto* morph_cmd = app.add_subcommand("morph-analyze", "List segmentations of words");
  morph_cmd->add_option("--dialect", morph_dialect, "Variety whose affixes are used");
  morph_cmd->add_option("--morphemes", tables.morpheme_file, "Replacement morpheme inventory")
      ->check(CLI::ExistingFile);
  morph_cmd->add_option("words", words, "Words (default: whitespace-separated stdin)");
  add_format(morph_cmd, format);

  // similarity
  std::string wordlists;
  auto* sim_cmd = app.add_subcommand("similarity", "Pairwise variety similarity from wordlists");
  sim_cmd->add_option("--wordlists", wordlists, "Aligned wordlist TSV (default: bundled)")
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--output", output, "Output file (default stdout)");
  add_format(sim_cmd, format);

  // lid-train
  LidConfig lid;
  std::string train_file, model_file, level_name;
  bool upsample_train = false;
  auto* lid_train_cmd = app.add_subcommand("lid-train", "Train a dialect identifier");
  lid_train_cmd->add_option("--train", train_file, "label<TAB>text file")->required()->check(CLI::ExistingFile);
  lid_train_cmd->add_option("--model", model_file, "Output model file")->required();
  lid_train_cmd->add_option("--level", level_name, "language, dialect or subdialect (default: from labels)");
  lid_train_cmd->add_option("--minn", lid.ngram_min, "Shortest char n-gram")->capture_default_str();
  lid_train_cmd->add_option("--maxn", lid.ngram_max, "Longest char n-gram")->capture_default_str();
  lid_train_cmd->add_option("--dim", lid.dim, "Embedding size")->capture_default_str();
  lid_train_cmd->add_option("--epoch", lid.epochs, "Epochs")->capture_default_str();
  lid_train_cmd->add_option("--lr", lid.learning_rate, "Learning rate")->capture_default_str();
  lid_train_cmd->add_option("--bucket", lid.buckets, "Hash buckets")->capture_default_str();
  lid_train_cmd->add_option("--seed", lid.seed, "Random seed")->capture_default_str();
  lid_train_cmd->add_flag("--upsample", upsample_train, "Repeat minority classes to balance");

  // lid-predict
  std::size_t k = 1;
  auto* lid_predict_cmd = app.add_subcommand("lid-predict", "Identify the variety of each input line");
  lid_predict_cmd->add_option("--model", model_file, "Model file")->required()->check(CLI::ExistingFile);
  lid_predict_cmd->add_option("--k", k, "Labels per line")->capture_default_str();
  lid_predict_cmd->add_option("--input", input, "Input file (default stdin)");
  add_format(lid_predict_cmd, format);

  // lid-eval
  std::string test_file, confusion_file;
  auto* lid_eval_cmd = app.add_subcommand("lid-eval", "Score a model on labelled data");
  lid_eval_cmd->add_option("--model", model_file, "Model file")->required()->check(CLI::ExistingFile);
  lid_eval_cmd->add_option("--test", test_file, "label<TAB>text file")->required()->check(CLI::ExistingFile);
  lid_eval_cmd->add_option("--confusion", confusion_file, "Write the confusion matrix CSV here");
  add_format(lid_eval_cmd, format);

  // corpus-build
  std::string metadata_file, out_dir, aliases_file, slice_cmd, audio_out;
  BuildOptions build;
  auto* build_cmd = app.add_subcommand("corpus-build", "Build the corpus tree from SRT transcriptions");
  build_cmd->add_option("--metadata", metadata_file, "Episode metadata JSON")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--out", out_dir, "Corpus directory")->required();
  build_cmd->add_option("--min-duration", build.min_duration_s, "Shortest kept cue in seconds")->capture_default_str();
  build_cmd->add_option("--aliases", aliases_file, "Extra speaker alias JSON")->check(CLI::ExistingFile);
  build_cmd->add_option("--slice-cmd", slice_cmd, "Command run per cut: {source} {start} {end} {output}");
  build_cmd->add_option("--audio-out", audio_out, "Segment directory for --slice-cmd (default OUT/audio)");

  // corpus-stats
  std::string corpus_dir;
  auto* stats_cmd = app.add_subcommand("corpus-stats", "Per-dialect corpus statistics");
  stats_cmd->add_option("--corpus", corpus_dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  stats_cmd->add_option("--output", output, "Output file (default stdout)");
  add_format(stats_cmd, format);

  // corpus-split
  std::vector<std::string> test_sizes;
  std::optional<std::size_t> default_test;
  double val_fraction = 0.1, split_min = 0.2, lid_test = 0.2;
  std::uint64_t seed = 0;
  std::string lid_export;
  bool asr_sizes = false;
  auto* split_cmd = app.add_subcommand("corpus-split", "Train/validation/test listings");
  split_cmd->add_option("--corpus", corpus_dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  split_cmd->add_option("--out", out_dir, "Directory for train.txt, validation.txt, test.txt")->required();
  split_cmd->add_option("--test-size", test_sizes, "Per-dialect test size, e.g. ckb-snn=500");
  split_cmd->add_option("--default-test-size", default_test, "Test size for dialects not listed");
  split_cmd->add_flag("--asr-sizes", asr_sizes, "Use 500 (Mahabad, Sanandaj) and 2000 (Erbil, Sulaymaniyah)");
  split_cmd->add_option("--validation", val_fraction, "Validation share of the non-test rest")->capture_default_str();
  split_cmd->add_option("--min-duration", split_min, "Shortest utterance in seconds")->capture_default_str();
  split_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  split_cmd->add_option("--lid-export", lid_export, "Also write lid_train.tsv and lid_test.tsv here");
  split_cmd->add_option("--lid-test", lid_test, "Test share for --lid-export")->capture_default_str();
  split_cmd->add_flag("--upsample", upsample_train, "Balance lid_train.tsv by repetition");

  // eval-asr
  std::string ref_file, hyp_file;
  auto* asr_cmd = app.add_subcommand("eval-asr", "Word error rate of line-aligned files");
  asr_cmd->add_option("--ref", ref_file, "Reference transcripts")->required()->check(CLI::ExistingFile);
  asr_cmd->add_option("--hyp", hyp_file, "Hypothesis transcripts")->required()->check(CLI::ExistingFile);
  add_format(asr_cmd, format);

  // eval-mt
  std::vector<std::string> ref_files;
  std::string metric = "both", bleu_tok = "none";
  auto* mt_cmd = app.add_subcommand("eval-mt", "Corpus BLEU and chrF2 of line-aligned files");
  mt_cmd->add_option("--refs", ref_files, "Reference file(s)")->required()->check(CLI::ExistingFile);
  mt_cmd->add_option("--hyp", hyp_file, "Hypotheses")->required()->check(CLI::ExistingFile);
  mt_cmd->add_option("--metric", metric, "bleu, chrf or both")->check(CLI::IsMember({"bleu", "chrf", "both"}));
  mt_cmd->add_option("--tokenize", bleu_tok, "BLEU tokenization")->check(CLI::IsMember({"none", "13a"}));
  add_format(mt_cmd, format);

  // mt-experiment
  std::string config_file;
  bool wide = false;
  auto* exp_cmd = app.add_subcommand("mt-experiment", "Run translation experiments from a JSON config");
  exp_cmd->add_option("--config", config_file, "Experiment JSON")->required()->check(CLI::ExistingFile);
  exp_cmd->add_flag("--wide", wide, "One row per dialect, column pairs per system/direction/mode");
  exp_cmd->add_option("--output", output, "Output file (default stdout)");
  add_format(exp_cmd, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json({{"error", "usage"}, {"message", e.what()}}).dump() << "\n";
    return 2;
  }

  const bool as_json = format == "json";

  if (*normalize_cmd) {
    NormalizeOptions opts;
    opts.keep_zwnj = !strip_zwnj;
    for (const auto& line : input_lines(input)) {
      const NormalizedText t = normalize(line, opts);
      if (as_json) {
        json warnings = json::array();
        for (const auto& w : t.warnings) {
          warnings.push_back({{"offset", w.offset}, {"code_point", fmt::format("U+{:04X}", static_cast<unsigned>(w.code_point))}, {"message", w.message}});
        }
        std::cout << json({{"text", t.text}, {"tokens", tokenize(t)}, {"warnings", warnings}}).dump() << "\n";
      } else if (show_tokens) {
        const auto toks = tokenize(t);
        std::string joined;
        for (const auto& tok : toks) joined += (joined.empty() ? "" : " | ") + tok;
        std::cout << joined << "\n";
      } else {
        std::cout << t.text << "\n";
        for (const auto& w : t.warnings) {
          std::cerr << json({{"warning", w.message}, {"offset", w.offset}}).dump() << "\n";
        }
      }
    }
    return 0;
  }

  if (*translit_cmd) {
    const auto dir = to_script == "latin" ? TransliterationDirection::kArabicToLatin
                                          : TransliterationDirection::kLatinToArabic;
    for (const auto& line : input_lines(input)) {
      const NormalizedText t = transliterate(normalize(line), dir);
      std::cout << t.text << "\n";
      for (const auto& w : t.warnings) std::cerr << json({{"warning", w.message}}).dump() << "\n";
    }
    return 0;
  }

  if (*dia_cmd || *std_cmd) {
    tables.load();
    MorphAnalyzer analyzer(*tables.inventory);
    Transducer transducer(*tables.rules, analyzer);
    const bool forward = static_cast<bool>(*dia_cmd);
    const DialectTag tag = DialectTag::parse(forward ? target : source);
    std::size_t line_no = 0;
    for (const auto& line : input_lines(input)) {
      ++line_no;
      const NormalizedText t = normalize(line);
      const TransductionResult r = forward ? transducer.dialectalize(t, tag) : transducer.standardize(t, tag);
      std::cout << r.text.text << "\n";
      if (report_rewrites) {
        for (const auto& rw : r.rewrites) {
          std::cerr << json({{"line", line_no}, {"token", rw.token}, {"from", rw.from}, {"to", rw.to},
                             {"kind", rule_kind_name(rw.kind)}, {"bijective", rw.bijective}})
                           .dump()
                    << "\n";
        }
      }
    }
    return 0;
  }

  if (*morph_cmd) {
    std::unique_ptr<MorphemeInventory> inv;
    if (!tables.morpheme_file.empty()) {
      inv = std::make_unique<MorphemeInventory>(MorphemeInventory::from_tsv(read_file(tables.morpheme_file)));
    }
    MorphAnalyzer analyzer(inv ? *inv : MorphemeInventory::builtin());
    const DialectTag tag = DialectTag::parse(morph_dialect);
    if (words.empty()) {
      for (const auto& line : input_lines(input)) {
        const NormalizedText t = normalize(line);
        for (std::size_t i = 0; i < t.token_count(); ++i) {
          if (!is_punctuation_token(t.token(i))) words.emplace_back(t.token(i));
        }
      }
    }
    json all = json::array();
    std::string csv = "word,rank,stem,prefixes,suffixes\n";
    for (const auto& w : words) {
      const std::string word = normalize(w).text;
      for (const auto& a : analyzer.analyze(word, tag)) {
        std::string pre, suf;
        json jp = json::array(), js = json::array();
        for (const auto& m : a.prefixes) {
          pre += (pre.empty() ? "" : " ") + std::string(category_name(m.category)) + ":" + m.display();
          jp.push_back({{"category", category_name(m.category)}, {"surface", m.surface}});
        }
        for (const auto& m : a.suffixes) {
          suf += (suf.empty() ? "" : " ") + std::string(category_name(m.category)) + ":" + m.display();
          js.push_back({{"category", category_name(m.category)}, {"surface", m.surface}});
        }
        csv += fmt::format("{},{},{},{},{}\n", csv_field(word), a.confidence_rank, csv_field(a.stem),
                           csv_field(pre), csv_field(suf));
        all.push_back({{"word", word}, {"rank", a.confidence_rank}, {"stem", a.stem},
                       {"prefixes", jp}, {"suffixes", js}});
      }
    }
    std::cout << (as_json ? all.dump(2) + "\n" : csv);
    return 0;
  }

  if (*sim_cmd) {
    const Wordlists lists = wordlists.empty() ? Wordlists::builtin() : Wordlists::from_tsv(read_file(wordlists));
    const SimilarityMatrix m = similarity_matrix(lists);
    emit(as_json ? json({{"labels", m.labels}, {"values", m.values}}).dump(2) + "\n" : m.to_csv(), output);
    return 0;
  }

  if (*lid_train_cmd) {
    std::vector<LabeledExample> examples = parse_labeled_examples(read_file(train_file));
    if (upsample_train) {
      std::vector<ListingEntry> listing;
      for (std::size_t i = 0; i < examples.size(); ++i) listing.push_back({examples[i].label, std::to_string(i)});
      std::vector<LabeledExample> balanced;
      for (const auto& e : upsample(listing)) balanced.push_back(examples[std::stoul(e.value)]);
      examples = std::move(balanced);
    }
    std::optional<TagLevel> level;
    if (!level_name.empty()) level = parse_tag_level(level_name);
    const LidModel model = LidModel::train(examples, lid, level);
    model.save(model_file);
    std::cout << json({{"model", model_file}, {"labels", model.labels()}, {"level", tag_level_name(model.level())},
                       {"examples", examples.size()}, {"training_accuracy", model.training_accuracy()}})
                     .dump()
              << "\n";
    return 0;
  }

  if (*lid_predict_cmd) {
    const LidModel model = LidModel::load(model_file);
    for (const auto& line : input_lines(input)) {
      const NormalizedText t = normalize(line);
      if (t.token_count() == 0) {
        std::cout << (as_json ? "[]\n" : "\n");
        continue;
      }
      const auto preds = model.predict(t, k);
      if (as_json) {
        json j = json::array();
        for (const auto& p : preds) j.push_back({{"label", p.label}, {"probability", p.probability}});
        std::cout << j.dump() << "\n";
      } else {
        std::string row;
        for (const auto& p : preds) row += fmt::format("{}{}\t{:.6f}", row.empty() ? "" : "\t", p.label, p.probability);
        std::cout << row << "\n";
      }
    }
    return 0;
  }

  if (*lid_eval_cmd) {
    const LidModel model = LidModel::load(model_file);
    const auto test = parse_labeled_examples(read_file(test_file));
    const LidEvaluation ev = model.evaluate(test);
    if (!confusion_file.empty()) {
      std::string csv = "true\\predicted";
      for (const auto& l : ev.labels) csv += "," + l;
      csv += "\n";
      for (std::size_t r = 0; r < ev.labels.size(); ++r) {
        csv += ev.labels[r];
        for (std::size_t c : ev.confusion[r]) csv += fmt::format(",{}", c);
        csv += "\n";
      }
      write_file(confusion_file, csv);
    }
    if (as_json) {
      json classes = json::array();
      for (const auto& c : ev.f1.classes) {
        classes.push_back({{"label", c.label}, {"precision", c.precision}, {"recall", c.recall},
                           {"f1", c.f1}, {"support", c.support}});
      }
      std::cout << json({{"classes", classes}, {"macro_f1", ev.f1.macro_f1}, {"weighted_f1", ev.f1.weighted_f1},
                         {"accuracy", ev.f1.accuracy}, {"confusion", ev.confusion}})
                       .dump(2)
                << "\n";
    } else {
      std::cout << "label,precision,recall,f1,support\n";
      for (const auto& c : ev.f1.classes) {
        std::cout << fmt::format("{},{:.4f},{:.4f},{:.4f},{}\n", c.label, c.precision, c.recall, c.f1, c.support);
      }
      std::cout << fmt::format("macro,,,{:.4f},{}\n", ev.f1.macro_f1, test.size());
      std::cout << fmt::format("weighted,,,{:.4f},{}\n", ev.f1.weighted_f1, test.size());
    }
    return 0;
  }

  if (*build_cmd) {
    SpeakerAliases aliases = SpeakerAliases::builtin();
    if (!aliases_file.empty()) aliases.merge(SpeakerAliases::from_json(read_file(aliases_file)));
    const auto inputs = load_episode_inputs(metadata_file);
    const Corpus corpus = build_corpus(inputs, build, aliases);
    write_corpus(corpus, out_dir);
    std::size_t failed = 0;
    if (!slice_cmd.empty()) {
      failed = run_slicer(corpus.manifest, slice_cmd, audio_out.empty() ? fs::path(out_dir) / "audio" : fs::path(audio_out));
    }
    for (const auto& l : corpus.log) std::cerr << l << "\n";
    std::cout << json({{"episodes", corpus.episodes.size()}, {"utterances", corpus.utterances().size()},
                       {"log_entries", corpus.log.size()}, {"slice_failures", failed}})
                     .dump()
              << "\n";
    return failed == 0 ? 0 : 1;
  }

  if (*stats_cmd) {
    const auto rows = corpus_stats(read_corpus(corpus_dir));
    if (as_json) {
      json j = json::array();
      for (const auto& r : rows) {
        j.push_back({{"dialect", r.dialect}, {"utterances", r.utterances}, {"hours", r.hours},
                     {"avg_tokens", r.avg_tokens}, {"avg_seconds", r.avg_seconds},
                     {"speaker_metadata_pct", r.speaker_metadata_pct}});
      }
      emit(j.dump(2) + "\n", output);
    } else {
      emit(stats_csv(rows), output);
    }
    return 0;
  }

  if (*split_cmd) {
    const Corpus corpus = read_corpus(corpus_dir);
    SplitSpec spec = asr_sizes ? SplitSpec::asr_default() : SplitSpec{};
    spec.validation_fraction = val_fraction;
    spec.min_duration_s = split_min;
    spec.default_test_size = default_test;
    for (const auto& item : test_sizes) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::kInvalidInput, "--test-size wants DIALECT=N");
      spec.test_sizes[DialectTag::parse(item.substr(0, eq)).to_string()] = std::stoul(item.substr(eq + 1));
    }
    const Split split = split_corpus(corpus, spec, seed);
    fs::create_directories(out_dir);
    auto listing = [](const std::vector<std::string>& ids) {
      std::string s;
      for (const auto& id : ids) s += id + "\n";
      return s;
    };
    write_file(fs::path(out_dir) / "train.txt", listing(split.train));
    write_file(fs::path(out_dir) / "validation.txt", listing(split.validation));
    write_file(fs::path(out_dir) / "test.txt", listing(split.test));
    json summary = {{"train", split.train.size()}, {"validation", split.validation.size()}, {"test", split.test.size()}};
    if (!lid_export.empty()) {
      const LidSplit ls = lid_split(corpus, lid_test, seed, upsample_train);
      fs::create_directories(lid_export);
      auto tsv = [](const std::vector<ListingEntry>& v) {
        std::string s;
        for (const auto& e : v) s += e.label + "\t" + e.value + "\n";
        return s;
      };
      write_file(fs::path(lid_export) / "lid_train.tsv", tsv(ls.train));
      write_file(fs::path(lid_export) / "lid_test.tsv", tsv(ls.test));
      summary["lid_train"] = ls.train.size();
      summary["lid_test"] = ls.test.size();
    }
    std::cout << summary.dump() << "\n";
    return 0;
  }

  if (*asr_cmd) {
    const auto refs = split_lines(read_file(ref_file));
    const auto hyps = split_lines(read_file(hyp_file));
    if (refs.size() != hyps.size()) {
      throw Error(ErrorKind::kInvalidInput, fmt::format("{} reference lines but {} hypothesis lines", refs.size(), hyps.size()));
    }
    std::vector<std::vector<std::string>> r, h;
    for (const auto& l : refs) r.push_back(tokenize(normalize(l)));
    for (const auto& l : hyps) h.push_back(tokenize(normalize(l)));
    const WerBreakdown w = corpus_wer(r, h);
    if (as_json) {
      std::cout << json({{"wer", w.wer_percent}, {"substitutions", w.substitutions}, {"deletions", w.deletions},
                         {"insertions", w.insertions}, {"ref_tokens", w.ref_tokens}, {"lines", refs.size()}})
                       .dump()
                << "\n";
    } else {
      std::cout << "wer,substitutions,deletions,insertions,ref_tokens,lines\n"
                << fmt::format("{:.2f},{},{},{},{},{}\n", w.wer_percent, w.substitutions, w.deletions,
                               w.insertions, w.ref_tokens, refs.size());
    }
    return 0;
  }

  if (*mt_cmd) {
    const auto hyps = split_lines(read_file(hyp_file));
    std::vector<std::vector<std::string>> streams;
    for (const auto& f : ref_files) streams.push_back(split_lines(read_file(f)));
    BleuOptions opts;
    opts.tokenize_13a = bleu_tok == "13a";
    json j;
    std::string header, values;
    if (metric != "chrf") {
      const BleuScore b = corpus_bleu(hyps, streams, opts);
      j["bleu"] = b.score;
      j["brevity_penalty"] = b.brevity_penalty;
      j["precisions"] = b.precisions;
      j["sys_len"] = b.sys_len;
      j["ref_len"] = b.ref_len;
      header += "bleu,brevity_penalty,";
      values += fmt::format("{:.2f},{:.4f},", b.score, b.brevity_penalty);
    }
    if (metric != "bleu") {
      const double c = corpus_chrf(hyps, streams);
      j["chrf2"] = c;
      header += "chrf2,";
      values += fmt::format("{:.2f},", c);
    }
    j["sentences"] = hyps.size();
    j["tokenize"] = bleu_tok;
    std::cout << (as_json ? j.dump() + "\n"
                          : header + "sentences,tokenize\n" + values + fmt::format("{},{}\n", hyps.size(), bleu_tok));
    return 0;
  }

  if (*exp_cmd) {
    const auto rows = run_experiment_file(config_file);
    emit(as_json ? report_json(rows) : (wide ? report_wide_csv(rows) : report_csv(rows)), output);
    return 0;
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << json({{"error", error_kind_name(e.kind())}, {"line", e.line()}, {"message", e.what()}}).dump() << "\n";
  } catch (const Error& e) {
    std::cerr << json({{"error", error_kind_name(e.kind())}, {"message", e.what()}}).dump() << "\n";
  } catch (const std::exception& e) {
    std::cerr << json({{"error", "internal"}, {"message", e.what()}}).dump() << "\n";
  }
  return 1;
}
