#pragma once

// Second implementations used as test oracles. Written from the metric
// definitions, deliberately without sharing code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ckbvar/utf8.hpp"

namespace oracle {

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Plain recursive edit distance with memoization.
inline std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = std::min(d(i - 1, j) + 1, d(i, j - 1) + 1);
    best = std::min(best, d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1));
    memo[key] = best;
    return best;
  };
  return d(a.size(), b.size());
}

inline double wer_percent(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return 100.0 * static_cast<double>(edit_distance(ref, hyp)) / static_cast<double>(ref.size());
}

inline std::map<std::vector<std::string>, int> word_ngrams(const std::vector<std::string>& w, std::size_t n) {
  std::map<std::vector<std::string>, int> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    out[std::vector<std::string>(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + n))]++;
  }
  return out;
}

// Corpus BLEU-4, single reference, whitespace tokens, no smoothing. Only
// meaningful when every order has at least one match.
inline double corpus_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  double match[4] = {0, 0, 0, 0};
  double total[4] = {0, 0, 0, 0};
  double c = 0, r = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    auto h = words(hyps[s]);
    auto rf = words(refs[s]);
    c += static_cast<double>(h.size());
    r += static_cast<double>(rf.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      auto hc = word_ngrams(h, n);
      auto rc = word_ngrams(rf, n);
      for (const auto& [g, k] : hc) {
        total[n - 1] += k;
        auto it = rc.find(g);
        if (it != rc.end()) match[n - 1] += std::min(k, it->second);
      }
    }
  }
  double log_sum = 0;
  for (int n = 0; n < 4; ++n) log_sum += std::log(match[n] / total[n]);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_sum / 4.0);
}

inline std::map<std::u32string, int> char_ngrams(const std::string& s, std::size_t n) {
  std::u32string cps;
  for (char32_t c : ckbvar::utf8::decode(s)) {
    if (c != U' ') cps.push_back(c);
  }
  std::map<std::u32string, int> out;
  for (std::size_t i = 0; i + n <= cps.size(); ++i) out[cps.substr(i, n)]++;
  return out;
}

// Corpus chrF (beta 2, orders 1..6): statistics summed over sentences,
// precision and recall averaged over the orders that have counts.
inline double corpus_chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  const double b2 = 4.0;
  double m[6] = {}, hc[6] = {}, rc[6] = {};
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    for (std::size_t n = 1; n <= 6; ++n) {
      auto h = char_ngrams(hyps[s], n);
      auto r = char_ngrams(refs[s], n);
      // A reference too short for order n leaves the hypothesis uncounted too.
      if (r.empty()) continue;
      for (const auto& [g, k] : h) {
        hc[n - 1] += k;
        if (auto it = r.find(g); it != r.end()) m[n - 1] += std::min(k, it->second);
      }
      for (const auto& kv : r) rc[n - 1] += kv.second;
    }
  }
  // Character precision and recall are averaged over orders, then combined.
  double p = 0, rec = 0;
  int orders = 0;
  for (int n = 0; n < 6; ++n) {
    if (hc[n] == 0 || rc[n] == 0) continue;
    ++orders;
    p += m[n] / hc[n];
    rec += m[n] / rc[n];
  }
  if (orders == 0) return 0.0;
  p /= orders;
  rec /= orders;
  return p + rec > 0 ? 100.0 * (1 + b2) * p * rec / (b2 * p + rec) : 0.0;
}

// Macro F1 from (true, predicted) pairs, classes with support only.
inline double macro_f1(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, double> tp, fp, fn;
  std::map<std::string, bool> supported;
  for (const auto& [t, p] : pairs) {
    supported[t] = true;
    if (t == p) {
      tp[t] += 1;
    } else {
      fp[p] += 1;
      fn[t] += 1;
    }
  }
  double sum = 0;
  for (const auto& [label, on] : supported) {
    (void)on;
    const double prec = tp[label] + fp[label] > 0 ? tp[label] / (tp[label] + fp[label]) : 0.0;
    const double rec = tp[label] / (tp[label] + fn[label]);
    sum += prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
  }
  return sum / static_cast<double>(supported.size());
}

}  // namespace oracle
