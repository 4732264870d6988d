#include "ckbvar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>

#include "ckbvar/error.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

namespace {

struct EditCounts {
  std::size_t s = 0, d = 0, i = 0;
};

EditCounts align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::vector<std::size_t>> dp(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t r = 0; r <= n; ++r) dp[r][0] = r;
  for (std::size_t h = 0; h <= m; ++h) dp[0][h] = h;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t h = 1; h <= m; ++h) {
      const std::size_t diag = dp[r - 1][h - 1] + (ref[r - 1] == hyp[h - 1] ? 0 : 1);
      dp[r][h] = std::min({diag, dp[r - 1][h] + 1, dp[r][h - 1] + 1});
    }
  }
  EditCounts c;
  std::size_t r = n, h = m;
  while (r > 0 || h > 0) {
    if (r > 0 && h > 0 && dp[r][h] == dp[r - 1][h - 1] + (ref[r - 1] == hyp[h - 1] ? 0 : 1)) {
      if (ref[r - 1] != hyp[h - 1]) ++c.s;
      --r;
      --h;
    } else if (r > 0 && dp[r][h] == dp[r - 1][h] + 1) {
      ++c.d;
      --r;
    } else {
      ++c.i;
      --h;
    }
  }
  return c;
}

void finish(WerBreakdown& w) {
  if (w.ref_tokens == 0) throw Error(ErrorKind::kUndefinedMetric, "WER with an empty reference");
  w.wer_percent = 100.0 * static_cast<double>(w.errors()) / static_cast<double>(w.ref_tokens);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string lower(std::string_view s) {
  std::u32string cps = utf8::decode(s);
  for (char32_t& c : cps) {
    if (c < 128) c = static_cast<char32_t>(std::tolower(static_cast<int>(c)));
  }
  return utf8::encode(cps);
}

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(std::span<const std::string> tokens, int max_order) {
  NgramCounts out;
  for (int n = 1; n <= max_order; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
    }
  }
  return out;
}

struct BleuStats {
  std::array<double, 4> correct{};
  std::array<double, 4> total{};
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
};

void add_segment(BleuStats& stats, std::span<const std::string> hyp,
                 std::span<const std::vector<std::string>> refs) {
  std::size_t closest_diff = 0, closest_len = 0;
  bool first = true;
  NgramCounts ref_max;
  for (const auto& ref : refs) {
    const std::size_t diff = ref.size() > hyp.size() ? ref.size() - hyp.size() : hyp.size() - ref.size();
    if (first || diff < closest_diff) {
      closest_diff = diff;
      closest_len = ref.size();
      first = false;
    } else if (diff == closest_diff && ref.size() < closest_len) {
      closest_len = ref.size();
    }
    for (const auto& [g, c] : ngrams(ref, 4)) ref_max[g] = std::max(ref_max[g], c);
  }
  stats.sys_len += hyp.size();
  stats.ref_len += closest_len;
  for (const auto& [g, c] : ngrams(hyp, 4)) {
    auto it = ref_max.find(g);
    if (it != ref_max.end()) stats.correct[g.size() - 1] += static_cast<double>(std::min(c, it->second));
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    if (hyp.size() >= n) stats.total[n - 1] += static_cast<double>(hyp.size() - n + 1);
  }
}

double my_log(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

BleuScore compute_bleu(BleuStats stats, const BleuOptions& opt) {
  BleuScore out;
  out.sys_len = stats.sys_len;
  out.ref_len = stats.ref_len;
  if (stats.sys_len < stats.ref_len) {
    out.brevity_penalty =
        stats.sys_len > 0
            ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.sys_len))
            : 0.0;
  } else {
    out.brevity_penalty = 1.0;
  }
  out.correct = stats.correct;
  out.total = stats.total;
  if (stats.correct[0] == 0.0) return out;

  double smooth_mteval = 1.0;
  const double value =
      opt.smooth_value > 0 ? opt.smooth_value : (opt.smoothing == BleuSmoothing::kFloor ? 0.1 : 1.0);
  for (std::size_t n = 1; n <= 4; ++n) {
    double& correct = stats.correct[n - 1];
    double& total = stats.total[n - 1];
    if (opt.smoothing == BleuSmoothing::kAddK && n > 1) {
      correct += value;
      total += value;
    }
    if (total == 0.0) break;
    if (correct == 0.0) {
      if (opt.smoothing == BleuSmoothing::kExp) {
        smooth_mteval *= 2;
        out.precisions[n - 1] = 100.0 / (smooth_mteval * total);
      } else if (opt.smoothing == BleuSmoothing::kFloor) {
        out.precisions[n - 1] = 100.0 * value / total;
      }
    } else {
      out.precisions[n - 1] = 100.0 * correct / total;
    }
  }
  double sum = 0.0;
  for (double p : out.precisions) sum += my_log(p);
  out.score = out.brevity_penalty * std::exp(sum / 4.0);
  return out;
}

std::vector<std::string> bleu_tokens(std::string_view s, const BleuOptions& opt) {
  std::string text = opt.lowercase ? lower(s) : std::string(s);
  if (opt.tokenize_13a) text = tokenize_13a(text);
  return split_ws(text);
}

void check_streams(std::size_t n_hyp, std::span<const std::vector<std::string>> refs) {
  if (refs.empty()) throw Error(ErrorKind::kInvalidInput, "no reference stream");
  for (const auto& stream : refs) {
    if (stream.size() != n_hyp) {
      throw Error(ErrorKind::kInvalidInput, "reference stream length differs from hypotheses");
    }
  }
}

// Per-order [n_hyp, n_ref, n_match].
using ChrfStats = std::vector<std::array<double, 3>>;

std::vector<std::map<std::u32string, std::size_t>> char_ngrams(std::string_view s, int order) {
  std::u32string cps;
  for (char32_t c : utf8::decode(s)) {
    if (!utf8::is_space(c)) cps.push_back(c);
  }
  std::vector<std::map<std::u32string, std::size_t>> out(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) {
    for (std::size_t i = 0; i + n <= cps.size(); ++i) ++out[n - 1][cps.substr(i, n)];
  }
  return out;
}

double chrf_score(const ChrfStats& stats, double beta) {
  const double factor = beta * beta;
  double avg_prec = 0.0, avg_rec = 0.0;
  int effective = 0;
  for (const auto& [n_hyp, n_ref, n_match] : stats) {
    if (n_hyp > 0 && n_ref > 0) {
      avg_prec += n_match / n_hyp;
      avg_rec += n_match / n_ref;
      ++effective;
    }
  }
  if (effective == 0) return 0.0;
  avg_prec /= effective;
  avg_rec /= effective;
  if (avg_prec + avg_rec == 0.0) return 0.0;
  return 100.0 * (1 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec);
}

ChrfStats chrf_segment(std::string_view hyp, const std::vector<std::string_view>& refs,
                       const ChrfOptions& opt) {
  const auto h = char_ngrams(opt.lowercase ? lower(hyp) : std::string(hyp), opt.char_order);
  ChrfStats best;
  double best_f = -1.0;
  for (std::string_view ref : refs) {
    const auto r = char_ngrams(opt.lowercase ? lower(ref) : std::string(ref), opt.char_order);
    ChrfStats stats(static_cast<std::size_t>(opt.char_order));
    for (std::size_t n = 0; n < stats.size(); ++n) {
      double hyp_count = 0, ref_count = 0, match = 0;
      for (const auto& [g, c] : h[n]) hyp_count += static_cast<double>(c);
      for (const auto& [g, c] : r[n]) ref_count += static_cast<double>(c);
      for (const auto& [g, c] : h[n]) {
        auto it = r[n].find(g);
        if (it != r[n].end()) match += static_cast<double>(std::min(c, it->second));
      }
      stats[n] = {ref_count > 0 ? hyp_count : 0.0, ref_count, match};
    }
    const double f = chrf_score(stats, opt.beta);
    if (f > best_f) {
      best_f = f;
      best = stats;
    }
  }
  return best;
}

}  // namespace

WerBreakdown wer(std::span<const std::string> reference, std::span<const std::string> hypothesis) {
  const EditCounts c = align(reference, hypothesis);
  WerBreakdown w{c.s, c.d, c.i, reference.size(), 0.0};
  finish(w);
  return w;
}

WerBreakdown corpus_wer(std::span<const std::vector<std::string>> references,
                        std::span<const std::vector<std::string>> hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw Error(ErrorKind::kInvalidInput, "reference and hypothesis line counts differ");
  }
  WerBreakdown total;
  for (std::size_t k = 0; k < references.size(); ++k) {
    const EditCounts c = align(references[k], hypotheses[k]);
    total.substitutions += c.s;
    total.deletions += c.d;
    total.insertions += c.i;
    total.ref_tokens += references[k].size();
  }
  finish(total);
  return total;
}

std::string tokenize_13a(std::string_view input) {
  std::string line(input);
  auto replace_all = [&](std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = line.find(from, pos)) != std::string::npos) {
      line.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("<skipped>", "");
  replace_all("-\n", "");
  replace_all("\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all("&quot;", "\"");
    replace_all("&amp;", "&");
    replace_all("&lt;", "<");
    replace_all("&gt;", ">");
  }
  line = " " + line + " ";
  static const std::regex punct(R"(([\{-~\[-` -&\(-\+:-@/]))");
  static const std::regex period_comma_1(R"(([^0-9])([\.,]))");
  static const std::regex period_comma_2(R"(([\.,])([^0-9]))");
  static const std::regex dash(R"(([0-9])(-))");
  line = std::regex_replace(line, punct, " $1 ");
  line = std::regex_replace(line, period_comma_1, "$1 $2 ");
  line = std::regex_replace(line, period_comma_2, " $1 $2");
  line = std::regex_replace(line, dash, "$1 $2 ");
  std::string out;
  for (const auto& t : split_ws(line)) out += (out.empty() ? "" : " ") + t;
  return out;
}

BleuScore corpus_bleu(std::span<const std::string> hypotheses,
                      std::span<const std::vector<std::string>> references,
                      const BleuOptions& options) {
  check_streams(hypotheses.size(), references);
  BleuStats stats;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<std::vector<std::string>> refs;
    for (const auto& stream : references) {
      refs.push_back(bleu_tokens(stream[i], options));
    }
    add_segment(stats, bleu_tokens(hypotheses[i], options), refs);
  }
  return compute_bleu(stats, options);
}

double bleu(std::span<const std::vector<std::string>> references,
            std::span<const std::string> hypothesis) {
  if (references.empty() ||
      std::all_of(references.begin(), references.end(), [](const auto& r) { return r.empty(); })) {
    throw Error(ErrorKind::kInvalidInput, "BLEU needs a nonempty reference");
  }
  BleuStats stats;
  add_segment(stats, hypothesis, references);
  return compute_bleu(stats, {}).score;
}

double corpus_chrf(std::span<const std::string> hypotheses,
                   std::span<const std::vector<std::string>> references, const ChrfOptions& options) {
  check_streams(hypotheses.size(), references);
  ChrfStats total(static_cast<std::size_t>(options.char_order));
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<std::string_view> refs;
    for (const auto& stream : references) refs.push_back(stream[i]);
    const ChrfStats s = chrf_segment(hypotheses[i], refs, options);
    for (std::size_t n = 0; n < total.size(); ++n) {
      for (std::size_t k = 0; k < 3; ++k) total[n][k] += s[n][k];
    }
  }
  return chrf_score(total, options.beta);
}

double chrf(std::span<const std::string> references, std::string_view hypothesis,
            const ChrfOptions& options) {
  std::vector<std::string_view> refs(references.begin(), references.end());
  if (refs.empty()) throw Error(ErrorKind::kInvalidInput, "chrF needs a reference");
  return chrf_score(chrf_segment(hypothesis, refs, options), options.beta);
}

TranslationScore score_translations(std::span<const std::string> hypotheses,
                                    std::span<const std::vector<std::string>> references,
                                    const BleuOptions& bleu_options) {
  const BleuScore b = corpus_bleu(hypotheses, references, bleu_options);
  ChrfOptions c;
  c.lowercase = bleu_options.lowercase;
  return {b.score, corpus_chrf(hypotheses, references, c), b.brevity_penalty, b.precisions};
}

F1Report f1_scores(const ConfusionMatrix& confusion, std::span<const std::string> labels) {
  const std::size_t n = confusion.size();
  for (const auto& row : confusion) {
    if (row.size() != n) throw Error(ErrorKind::kInvalidInput, "confusion matrix is not square");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "label count does not match confusion matrix");
  }
  std::size_t total = 0, correct = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) total += confusion[r][c];
    correct += confusion[r][r];
  }
  if (total == 0) throw Error(ErrorKind::kUndefinedMetric, "F1 of an all-zero confusion matrix");

  F1Report report;
  double macro = 0.0, weighted = 0.0;
  std::size_t supported = 0;
  for (std::size_t k = 0; k < n; ++k) {
    ClassScore s;
    s.label = labels.empty() ? std::to_string(k) : labels[k];
    for (std::size_t c = 0; c < n; ++c) s.support += confusion[k][c];
    for (std::size_t r = 0; r < n; ++r) s.predicted += confusion[r][k];
    const double tp = static_cast<double>(confusion[k][k]);
    s.precision = s.predicted > 0 ? tp / static_cast<double>(s.predicted) : 0.0;
    s.recall = s.support > 0 ? tp / static_cast<double>(s.support) : 0.0;
    s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    if (s.support > 0) {
      macro += s.f1;
      weighted += s.f1 * static_cast<double>(s.support);
      ++supported;
    }
    report.classes.push_back(std::move(s));
  }
  report.macro_f1 = macro / static_cast<double>(supported);
  report.weighted_f1 = weighted / static_cast<double>(total);
  report.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return report;
}

}  // namespace ckbvar
