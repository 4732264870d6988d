#include "ckbvar/harness.hpp"

#include <fmt/format.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <map>
#include <regex>
#include <set>
#include <thread>

#include "ckbvar/error.hpp"
#include "ckbvar/random.hpp"
#include "ckbvar/tsv.hpp"
#include "httplib.h"
#include "json.hpp"

namespace ckbvar {

using nlohmann::json;

std::string_view adapter_kind_name(AdapterKind k) {
  switch (k) {
    case AdapterKind::kIdentity: return "identity";
    case AdapterKind::kCommand: return "command";
    case AdapterKind::kHttp: return "http";
  }
  return "";
}

AdapterKind parse_adapter_kind(std::string_view s) {
  if (s == "identity") return AdapterKind::kIdentity;
  if (s == "command" || s == "external-command") return AdapterKind::kCommand;
  if (s == "http" || s == "HTTP-endpoint") return AdapterKind::kHttp;
  throw Error(ErrorKind::kSchema, "unknown adapter kind '" + std::string(s) + "'");
}

namespace {

std::string one_line(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '\n', ' ');
  std::replace(out.begin(), out.end(), '\r', ' ');
  return out;
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

class IdentityAdapter : public TranslatorAdapter {
 public:
  std::vector<std::string> translate_batch(std::span<const std::string> texts, std::string_view,
                                           std::string_view) override {
    return {texts.begin(), texts.end()};
  }
};

class CommandAdapter : public TranslatorAdapter {
 public:
  explicit CommandAdapter(std::string command) : command_(std::move(command)) {}

  std::vector<std::string> translate_batch(std::span<const std::string> texts, std::string_view src,
                                           std::string_view tgt) override {
    static std::atomic<unsigned> counter{0};
    const auto stem = std::filesystem::temp_directory_path() /
                      fmt::format("ckbvar-{}-{}", ::getpid(), counter++);
    const auto input = stem.string() + ".in";
    const auto output = stem.string() + ".out";
    std::string body;
    for (const auto& t : texts) body += one_line(t) + "\n";
    write_file(input, body);
    std::string cmd = command_;
    auto sub = [&](std::string_view key, const std::string& value) {
      std::size_t pos = 0;
      while ((pos = cmd.find(key, pos)) != std::string::npos) {
        cmd.replace(pos, key.size(), value);
        pos += value.size();
      }
    };
    sub("{src}", shell_quote(src));
    sub("{tgt}", shell_quote(tgt));
    sub("{input}", shell_quote(input));
    sub("{output}", shell_quote(output));
    const int status = std::system(cmd.c_str());
    std::vector<std::string> lines;
    std::error_code ec;
    if (status == 0 && std::filesystem::exists(output, ec)) lines = split_lines(read_file(output));
    std::filesystem::remove(input, ec);
    std::filesystem::remove(output, ec);
    if (status != 0) throw Error(ErrorKind::kAdapter, fmt::format("command exited with status {}", status));
    if (lines.size() != texts.size()) {
      throw Error(ErrorKind::kAdapter,
                  fmt::format("command returned {} lines for {} inputs", lines.size(), texts.size()));
    }
    return lines;
  }

 private:
  std::string command_;
};

class HttpAdapter : public TranslatorAdapter {
 public:
  HttpAdapter(const std::string& url, std::string token_env, double timeout_s)
      : token_env_(std::move(token_env)), timeout_s_(timeout_s) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw Error(ErrorKind::kSchema, "bad adapter url '" + url + "'");
    base_ = m[1];
    path_ = m[2].matched ? std::string(m[2]) : "/";
  }

  std::vector<std::string> translate_batch(std::span<const std::string> texts, std::string_view src,
                                           std::string_view tgt) override {
    httplib::Client client(base_);
    const auto secs = static_cast<time_t>(timeout_s_);
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    httplib::Headers headers;
    if (!token_env_.empty()) {
      if (const char* token = std::getenv(token_env_.c_str())) {
        headers.emplace("Authorization", std::string("Bearer ") + token);
      }
    }
    const json body = {{"source_lang", src}, {"target_lang", tgt},
                       {"texts", std::vector<std::string>(texts.begin(), texts.end())}};
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) {
      throw Error(ErrorKind::kAdapter, "request to " + base_ + path_ + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorKind::kAdapter, fmt::format("{}{} answered HTTP {}", base_, path_, res->status));
    }
    std::vector<std::string> out;
    try {
      out = json::parse(res->body).at("translations").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kAdapter, std::string("bad adapter response: ") + e.what());
    }
    if (out.size() != texts.size()) {
      throw Error(ErrorKind::kAdapter,
                  fmt::format("adapter returned {} translations for {} inputs", out.size(), texts.size()));
    }
    return out;
  }

 private:
  std::string base_;
  std::string path_;
  std::string token_env_;
  double timeout_s_;
};

}  // namespace

std::unique_ptr<TranslatorAdapter> make_adapter(const AdapterConfig& config) {
  switch (config.kind) {
    case AdapterKind::kIdentity: return std::make_unique<IdentityAdapter>();
    case AdapterKind::kCommand:
      if (config.command.empty()) throw Error(ErrorKind::kSchema, "command adapter needs a command");
      return std::make_unique<CommandAdapter>(config.command);
    case AdapterKind::kHttp:
      return std::make_unique<HttpAdapter>(config.url, config.token_env, config.timeout_s);
  }
  throw Error(ErrorKind::kSchema, "unknown adapter kind");
}

BatchTranslator::BatchTranslator(AdapterConfig config, std::unique_ptr<TranslatorAdapter> adapter)
    : config_(std::move(config)), adapter_(std::move(adapter)) {
  if (config_.batch_size == 0) config_.batch_size = 1;
  if (config_.parallelism == 0) config_.parallelism = 1;
}

std::filesystem::path BatchTranslator::cache_path(std::string_view text, std::string_view src,
                                                  std::string_view tgt) const {
  const std::string key = fmt::format("{}\x1f{}\x1f{}\x1f{}", config_.name, src, tgt, text);
  return *config_.cache_dir / fmt::format("{:016x}.json", fnv1a64(key));
}

std::vector<std::string> BatchTranslator::run_batch(std::span<const std::string> texts,
                                                    std::string_view src, std::string_view tgt) {
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= config_.retries; ++attempt) {
    {
      std::unique_lock lock(pace_mutex_);
      const auto gap = std::chrono::duration<double>(config_.min_interval_s);
      const auto next = last_start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(gap);
      const auto now = std::chrono::steady_clock::now();
      if (config_.min_interval_s > 0 && now < next) std::this_thread::sleep_for(next - now);
      last_start_ = std::chrono::steady_clock::now();
    }
    try {
      auto out = adapter_->translate_batch(texts, src, tgt);
      if (out.size() != texts.size()) throw Error(ErrorKind::kAdapter, "adapter changed batch length");
      return out;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorKind::kAdapter, fmt::format("{}: batch failed after {} attempts: {}", config_.name,
                                               config_.retries + 1, last_error));
}

std::vector<std::string> BatchTranslator::translate(std::span<const std::string> texts,
                                                    std::string_view source_lang,
                                                    std::string_view target_lang) {
  std::vector<std::string> out(texts.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (config_.cache_dir) {
      const auto path = cache_path(texts[i], source_lang, target_lang);
      std::error_code ec;
      if (std::filesystem::exists(path, ec)) {
        try {
          const json j = json::parse(read_file(path));
          if (j.at("text").get<std::string>() == texts[i]) {
            out[i] = j.at("translation").get<std::string>();
            ++cache_hits_;
            continue;
          }
        } catch (const std::exception&) {
          // unreadable entries are recomputed
        }
      }
    }
    todo.push_back(i);
  }

  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < todo.size(); i += config_.batch_size) {
    batches.emplace_back(todo.begin() + static_cast<std::ptrdiff_t>(i),
                         todo.begin() + static_cast<std::ptrdiff_t>(std::min(todo.size(), i + config_.batch_size)));
  }
  const std::string src(source_lang), tgt(target_lang);
  for (std::size_t b = 0; b < batches.size(); b += config_.parallelism) {
    std::vector<std::future<std::vector<std::string>>> running;
    const std::size_t end = std::min(batches.size(), b + config_.parallelism);
    for (std::size_t k = b; k < end; ++k) {
      std::vector<std::string> batch;
      for (std::size_t i : batches[k]) batch.push_back(texts[i]);
      running.push_back(std::async(std::launch::async, [this, batch = std::move(batch), &src, &tgt] {
        return run_batch(batch, src, tgt);
      }));
    }
    for (std::size_t k = b; k < end; ++k) {
      auto result = running[k - b].get();
      for (std::size_t j = 0; j < batches[k].size(); ++j) out[batches[k][j]] = std::move(result[j]);
    }
  }

  if (config_.cache_dir && !todo.empty()) {
    std::filesystem::create_directories(*config_.cache_dir);
    for (std::size_t i : todo) {
      write_file(cache_path(texts[i], source_lang, target_lang),
                 json({{"text", texts[i]}, {"translation", out[i]}}).dump() + "\n");
    }
  }
  return out;
}

std::string_view direction_name(MtDirection d) {
  return d == MtDirection::kToEnglish ? "ckb-en" : "en-ckb";
}

MtDirection parse_direction(std::string_view s) {
  if (s == "ckb-en" || s == "ckb->en" || s == "to-en") return MtDirection::kToEnglish;
  if (s == "en-ckb" || s == "en->ckb" || s == "from-en") return MtDirection::kFromEnglish;
  throw Error(ErrorKind::kSchema, "direction must be ckb-en or en-ckb, got '" + std::string(s) + "'");
}

std::string_view mode_name(MtMode m) {
  switch (m) {
    case MtMode::kBaseline: return "baseline";
    case MtMode::kPreprocess: return "preprocess";
    case MtMode::kPostprocess: return "postprocess";
  }
  return "";
}

MtMode parse_mode(std::string_view s) {
  if (s == "baseline") return MtMode::kBaseline;
  if (s == "preprocess") return MtMode::kPreprocess;
  if (s == "postprocess") return MtMode::kPostprocess;
  throw Error(ErrorKind::kSchema, "unknown mode '" + std::string(s) + "'");
}

MtReportRow run_mt_experiment(const MtExperiment& exp, BatchTranslator& translator,
                              const Transducer& transducer) {
  if (exp.mode == MtMode::kPreprocess && exp.direction != MtDirection::kToEnglish) {
    throw Error(ErrorKind::kInvalidInput, "preprocess applies to dialect-to-English only");
  }
  if (exp.mode == MtMode::kPostprocess && exp.direction != MtDirection::kFromEnglish) {
    throw Error(ErrorKind::kInvalidInput, "postprocess applies to English-to-dialect only");
  }
  if (exp.sources.size() != exp.references.size()) {
    throw Error(ErrorKind::kSchema, fmt::format("{} sources but {} references", exp.sources.size(),
                                                exp.references.size()));
  }
  const bool to_en = exp.direction == MtDirection::kToEnglish;
  const std::string src = to_en ? exp.dialect.language : "en";
  const std::string tgt = to_en ? "en" : exp.dialect.language;

  std::vector<std::string> inputs = exp.sources;
  if (exp.mode == MtMode::kPreprocess) {
    for (auto& s : inputs) s = transducer.standardize(normalize(s), exp.dialect).text.text;
  }
  std::vector<std::string> hyps = translator.translate(inputs, src, tgt);
  std::vector<std::string> refs = exp.references;
  if (!to_en) {
    for (auto& h : hyps) {
      NormalizedText t = normalize(h);
      h = exp.mode == MtMode::kPostprocess ? transducer.dialectalize(t, exp.dialect).text.text : t.text;
    }
    for (auto& r : refs) r = normalize(r).text;
  }
  const std::vector<std::vector<std::string>> ref_streams = {refs};

  MtReportRow row;
  row.dialect = exp.dialect.to_string();
  row.direction = std::string(direction_name(exp.direction));
  row.system = translator.config().name;
  row.mode = std::string(mode_name(exp.mode));
  row.score = score_translations(hyps, ref_streams, exp.bleu);
  row.adapter_kind = std::string(adapter_kind_name(translator.config().kind));
  row.sentences = exp.sources.size();
  row.tokenize = exp.bleu.tokenize_13a ? "13a" : "none";
  return row;
}

std::string report_csv(std::span<const MtReportRow> rows) {
  std::string out = "dialect,direction,system,mode,bleu,chrf2,brevity_penalty,adapter,sentences,tokenize,scoring\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{:.2f},{:.2f},{:.4f},{},{},{},{}\n", r.dialect, r.direction, r.system,
                       r.mode, r.score.bleu, r.score.chrf2, r.score.brevity_penalty, r.adapter_kind,
                       r.sentences, r.tokenize, r.scoring);
  }
  return out;
}

std::string report_wide_csv(std::span<const MtReportRow> rows) {
  std::vector<std::string> columns;
  std::vector<std::string> dialects;
  std::map<std::pair<std::string, std::string>, const MtReportRow*> cell;
  for (const auto& r : rows) {
    const std::string col = fmt::format("{} {} {}", r.system, r.direction, r.mode);
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    if (std::find(dialects.begin(), dialects.end(), r.dialect) == dialects.end()) dialects.push_back(r.dialect);
    cell[{r.dialect, col}] = &r;
  }
  std::string out = "dialect";
  for (const auto& c : columns) out += fmt::format(",{} BLEU,{} chrF2", c, c);
  out += "\n";
  for (const auto& d : dialects) {
    out += d;
    for (const auto& c : columns) {
      auto it = cell.find({d, c});
      if (it == cell.end()) out += ",,";
      else out += fmt::format(",{:.2f},{:.2f}", it->second->score.bleu, it->second->score.chrf2);
    }
    out += "\n";
  }
  return out;
}

std::string report_json(std::span<const MtReportRow> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"dialect", r.dialect},
                   {"direction", r.direction},
                   {"system", r.system},
                   {"mode", r.mode},
                   {"bleu", r.score.bleu},
                   {"chrf2", r.score.chrf2},
                   {"brevity_penalty", r.score.brevity_penalty},
                   {"ngram_precisions", r.score.ngram_precisions},
                   {"adapter", r.adapter_kind},
                   {"sentences", r.sentences},
                   {"tokenize", r.tokenize},
                   {"scoring", r.scoring}});
  }
  return out.dump(2) + "\n";
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  return split_lines(read_file(path));
}

AdapterConfig adapter_from_json(const json& j, const std::filesystem::path& base,
                                const std::optional<std::filesystem::path>& default_cache) {
  AdapterConfig c;
  c.name = j.at("name").get<std::string>();
  c.kind = parse_adapter_kind(j.value("kind", std::string("identity")));
  c.command = j.value("command", std::string());
  c.url = j.value("url", std::string());
  c.token_env = j.value("token_env", std::string());
  c.timeout_s = j.value("timeout_s", c.timeout_s);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.parallelism = j.value("parallelism", c.parallelism);
  c.retries = j.value("retries", c.retries);
  c.min_interval_s = j.value("min_interval_s", c.min_interval_s);
  if (j.contains("cache_dir")) {
    std::filesystem::path p = j["cache_dir"].get<std::string>();
    c.cache_dir = p.is_relative() ? base / p : p;
  } else if (default_cache) {
    c.cache_dir = *default_cache / c.name;
  }
  return c;
}

}  // namespace

std::vector<MtReportRow> run_experiment_file(const std::filesystem::path& config_json) {
  json cfg;
  try {
    cfg = json::parse(read_file(config_json));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, config_json.string() + ": " + e.what());
  }
  const auto base = config_json.parent_path();
  std::vector<MtReportRow> rows;
  try {
    std::optional<std::filesystem::path> cache;
    if (cfg.contains("cache_dir")) {
      std::filesystem::path p = cfg["cache_dir"].get<std::string>();
      cache = p.is_relative() ? base / p : p;
    }
    BleuOptions bleu;
    const std::string tok = cfg.value("tokenize", std::string("none"));
    if (tok != "none" && tok != "13a") throw Error(ErrorKind::kSchema, "tokenize must be none or 13a");
    bleu.tokenize_13a = tok == "13a";

    std::vector<std::unique_ptr<BatchTranslator>> systems;
    for (const auto& s : cfg.at("systems")) {
      systems.push_back(std::make_unique<BatchTranslator>(adapter_from_json(s, base, cache)));
    }
    if (systems.empty()) throw Error(ErrorKind::kSchema, "no systems configured");

    for (const auto& e : cfg.at("experiments")) {
      MtExperiment exp;
      exp.dialect = DialectTag::parse(e.at("dialect").get<std::string>());
      exp.direction = parse_direction(e.at("direction").get<std::string>());
      auto path = [&](const char* key) {
        std::filesystem::path p = e.at(key).get<std::string>();
        return p.is_relative() ? base / p : p;
      };
      exp.sources = read_lines(path("sources"));
      exp.references = read_lines(path("references"));
      exp.bleu = bleu;
      std::vector<std::string> modes = e.value("modes", std::vector<std::string>{});
      if (modes.empty()) {
        modes = {"baseline", exp.direction == MtDirection::kToEnglish ? "preprocess" : "postprocess"};
      }
      std::set<std::string> only;
      for (const auto& s : e.value("systems", std::vector<std::string>{})) only.insert(s);
      for (auto& sys : systems) {
        if (!only.empty() && !only.contains(sys->config().name)) continue;
        for (const auto& m : modes) {
          exp.mode = parse_mode(m);
          rows.push_back(run_mt_experiment(exp, *sys));
        }
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, config_json.string() + ": " + e.what());
  }
  return rows;
}

}  // namespace ckbvar
