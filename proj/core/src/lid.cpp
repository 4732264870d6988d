#include "ckbvar/lid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>

#include "ckbvar/error.hpp"
#include "ckbvar/random.hpp"
#include "ckbvar/tsv.hpp"
#include "ckbvar/utf8.hpp"

namespace ckbvar {

static_assert(std::endian::native == std::endian::little, "model files are little-endian");

namespace {

constexpr std::string_view kMagic = "CKBLID";
constexpr std::uint32_t kFormatVersion = 1;

void softmax(std::vector<float>& scores) {
  const float top = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (float& s : scores) {
    s = std::exp(s - top);
    sum += s;
  }
  for (float& s : scores) s = static_cast<float>(s / sum);
}

class Writer {
 public:
  template <typename T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
  }
  void put_string(std::string_view s) {
    put(static_cast<std::uint32_t>(s.size()));
    out += s;
  }
  void put_floats(const std::vector<float>& v, std::size_t begin, std::size_t n) {
    out.append(reinterpret_cast<const char*>(v.data() + begin), n * sizeof(float));
  }
  std::string out;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}
  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  void get_floats(std::vector<float>& v, std::size_t n) {
    need(n * sizeof(float));
    const std::size_t old = v.size();
    v.resize(old + n);
    std::memcpy(v.data() + old, in_.data() + pos_, n * sizeof(float));
    pos_ += n * sizeof(float);
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorKind::kModelFormat, "truncated model file");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

TagLevel check_labels(const std::vector<std::string>& labels, std::optional<TagLevel> level) {
  bool any_sub = false, all_sub = true;
  for (const auto& l : labels) {
    DialectTag tag;
    try {
      tag = DialectTag::parse(l);
    } catch (const Error&) {
      throw Error(ErrorKind::kLabel, "label '" + l + "' is not a dialect tag");
    }
    any_sub = any_sub || tag.subdialect.has_value();
    all_sub = all_sub && tag.subdialect.has_value();
  }
  const TagLevel inferred = all_sub ? TagLevel::kSubdialect : TagLevel::kLanguage;
  if (!level) {
    if (any_sub && !all_sub) {
      throw Error(ErrorKind::kLabel, "labels mix subdialect and coarser tags");
    }
    return inferred;
  }
  const bool want_sub = *level == TagLevel::kSubdialect;
  if ((want_sub && !all_sub) || (!want_sub && any_sub)) {
    throw Error(ErrorKind::kLabel,
                "labels do not match level " + std::string(tag_level_name(*level)));
  }
  return *level;
}

}  // namespace

void LidConfig::validate() const {
  if (ngram_min < 1 || ngram_min > ngram_max) {
    throw Error(ErrorKind::kInvalidInput, "need 1 <= ngram_min <= ngram_max");
  }
  if (dim <= 0 || epochs <= 0 || buckets == 0) {
    throw Error(ErrorKind::kInvalidInput, "dim, epochs and buckets must be positive");
  }
  if (!(learning_rate > 0)) throw Error(ErrorKind::kInvalidInput, "learning rate must be positive");
}

std::vector<LabeledExample> parse_labeled_examples(std::string_view contents) {
  std::vector<LabeledExample> out;
  const auto lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(i + 1, "expected label<TAB>text");
    }
    LabeledExample ex{normalize(std::string_view(line).substr(tab + 1)), line.substr(0, tab)};
    if (ex.text.token_count() == 0) throw ParseError(i + 1, "empty text");
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<std::string> feature_strings(const NormalizedText& text, const LidConfig& config) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < text.token_count(); ++t) {
    std::u32string wrapped = U"^" + utf8::decode(text.token(t)) + U"$";
    for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
      const auto len = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i + len <= wrapped.size(); ++i) {
        out.push_back(utf8::encode(std::u32string_view(wrapped).substr(i, len)));
      }
    }
  }
  if (config.word_unigrams) {
    for (std::size_t t = 0; t < text.token_count(); ++t) out.emplace_back(text.token(t));
  }
  return out;
}

std::vector<std::uint32_t> featurize(const NormalizedText& text, const LidConfig& config) {
  std::vector<std::uint32_t> out;
  const auto strings = feature_strings(text, config);
  std::size_t ngram_count = strings.size() - (config.word_unigrams ? text.token_count() : 0);
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const std::string key = i < ngram_count ? strings[i] : "\x01" + strings[i];
    out.push_back(fnv1a32(key) % config.buckets);
  }
  return out;
}

LidModel LidModel::train(std::span<const LabeledExample> examples, const LidConfig& config,
                         std::optional<TagLevel> level) {
  config.validate();
  if (examples.empty()) throw Error(ErrorKind::kEmptyInput, "no training examples");
  LidModel model;
  model.config_ = config;
  std::map<std::string, std::size_t> label_index;
  for (const auto& ex : examples) label_index.emplace(ex.label, 0);
  if (label_index.size() < 2) {
    throw Error(ErrorKind::kDegenerateTraining, "training needs at least two distinct labels");
  }
  for (auto& [label, idx] : label_index) {
    idx = model.labels_.size();
    model.labels_.push_back(label);
  }
  model.level_ = check_labels(model.labels_, level);

  const auto dim = static_cast<std::size_t>(config.dim);
  const std::size_t n_labels = model.labels_.size();
  Rng rng(config.seed);

  // Rows are created in first-seen order so the layout is deterministic.
  std::vector<std::vector<std::uint32_t>> rows_of(examples.size());
  std::vector<std::size_t> targets(examples.size());
  for (std::size_t e = 0; e < examples.size(); ++e) {
    targets[e] = label_index.at(examples[e].label);
    for (std::uint32_t b : featurize(examples[e].text, config)) {
      auto [it, inserted] =
          model.row_of_.emplace(b, static_cast<std::uint32_t>(model.row_bucket_.size()));
      if (inserted) model.row_bucket_.push_back(b);
      rows_of[e].push_back(it->second);
    }
  }
  const float bound = 1.0f / static_cast<float>(dim);
  model.input_.resize(model.row_bucket_.size() * dim);
  for (float& w : model.input_) w = static_cast<float>((rng.unit() * 2.0 - 1.0) * bound);
  model.output_.assign(n_labels * dim, 0.0f);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<float> h(dim), grad(dim), scores(n_labels);
  const double total_steps = static_cast<double>(config.epochs) * static_cast<double>(examples.size());
  double step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t e : order) {
      const float lr = static_cast<float>(config.learning_rate * (1.0 - step / total_steps));
      ++step;
      const auto& rows = rows_of[e];
      if (rows.empty()) continue;
      std::fill(h.begin(), h.end(), 0.0f);
      for (std::uint32_t r : rows) {
        const float* w = &model.input_[r * dim];
        for (std::size_t d = 0; d < dim; ++d) h[d] += w[d];
      }
      const float inv = 1.0f / static_cast<float>(rows.size());
      for (float& x : h) x *= inv;
      for (std::size_t j = 0; j < n_labels; ++j) {
        const float* o = &model.output_[j * dim];
        float s = 0.0f;
        for (std::size_t d = 0; d < dim; ++d) s += o[d] * h[d];
        scores[j] = s;
      }
      softmax(scores);
      std::fill(grad.begin(), grad.end(), 0.0f);
      for (std::size_t j = 0; j < n_labels; ++j) {
        const float g = lr * ((j == targets[e] ? 1.0f : 0.0f) - scores[j]);
        float* o = &model.output_[j * dim];
        for (std::size_t d = 0; d < dim; ++d) {
          grad[d] += g * o[d];
          o[d] += g * h[d];
        }
      }
      for (float& g : grad) g *= inv;
      for (std::uint32_t r : rows) {
        float* w = &model.input_[r * dim];
        for (std::size_t d = 0; d < dim; ++d) w[d] += grad[d];
      }
    }
  }

  std::size_t correct = 0;
  for (const auto& ex : examples) {
    if (model.predict(ex.text, 1).front().label == ex.label) ++correct;
  }
  model.training_accuracy_ = static_cast<double>(correct) / static_cast<double>(examples.size());
  return model;
}

std::vector<float> LidModel::hidden(const std::vector<std::uint32_t>& features) const {
  const auto dim = static_cast<std::size_t>(config_.dim);
  std::vector<float> h(dim, 0.0f);
  std::size_t used = 0;
  for (std::uint32_t b : features) {
    auto it = row_of_.find(b);
    if (it == row_of_.end()) continue;
    const float* w = &input_[it->second * dim];
    for (std::size_t d = 0; d < dim; ++d) h[d] += w[d];
    ++used;
  }
  if (used > 0) {
    const float inv = 1.0f / static_cast<float>(used);
    for (float& x : h) x *= inv;
  }
  return h;
}

std::vector<double> LidModel::probabilities(const NormalizedText& text) const {
  if (text.token_count() == 0) throw Error(ErrorKind::kEmptyInput, "cannot classify empty text");
  const auto dim = static_cast<std::size_t>(config_.dim);
  const std::vector<float> h = hidden(featurize(text, config_));
  std::vector<float> scores(labels_.size());
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    const float* o = &output_[j * dim];
    float s = 0.0f;
    for (std::size_t d = 0; d < dim; ++d) s += o[d] * h[d];
    scores[j] = s;
  }
  softmax(scores);
  return {scores.begin(), scores.end()};
}

std::vector<Prediction> LidModel::predict(const NormalizedText& text, std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::kInvalidInput, "k must be at least 1");
  const auto probs = probabilities(text);
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  order.resize(std::min(k, order.size()));
  std::vector<Prediction> out;
  for (std::size_t j : order) out.push_back({labels_[j], probs[j]});
  return out;
}

LidEvaluation LidModel::evaluate(std::span<const LabeledExample> test) const {
  LidEvaluation ev;
  ev.labels = labels_;
  ev.confusion.assign(labels_.size(), std::vector<std::size_t>(labels_.size(), 0));
  for (const auto& ex : test) {
    auto it = std::find(labels_.begin(), labels_.end(), ex.label);
    if (it == labels_.end()) {
      throw Error(ErrorKind::kLabel, "label '" + ex.label + "' is not known to the model");
    }
    const std::string predicted = predict(ex.text, 1).front().label;
    const auto p = std::find(labels_.begin(), labels_.end(), predicted);
    ++ev.confusion[static_cast<std::size_t>(it - labels_.begin())]
                  [static_cast<std::size_t>(p - labels_.begin())];
  }
  ev.f1 = f1_scores(ev.confusion, labels_);
  return ev;
}

std::string LidModel::serialize() const {
  Writer w;
  w.out += kMagic;
  w.put(kFormatVersion);
  w.put(static_cast<std::int32_t>(config_.ngram_min));
  w.put(static_cast<std::int32_t>(config_.ngram_max));
  w.put(static_cast<std::int32_t>(config_.dim));
  w.put(static_cast<std::int32_t>(config_.epochs));
  w.put(config_.learning_rate);
  w.put(config_.buckets);
  w.put(config_.seed);
  w.put(static_cast<std::uint8_t>(config_.word_unigrams));
  w.put(static_cast<std::uint8_t>(level_));
  w.put(training_accuracy_);
  w.put(static_cast<std::uint32_t>(labels_.size()));
  for (const auto& l : labels_) w.put_string(l);
  const auto dim = static_cast<std::size_t>(config_.dim);
  w.put(static_cast<std::uint32_t>(row_bucket_.size()));
  for (std::size_t r = 0; r < row_bucket_.size(); ++r) {
    w.put(row_bucket_[r]);
    w.put_floats(input_, r * dim, dim);
  }
  w.put_floats(output_, 0, output_.size());
  return std::move(w.out);
}

LidModel LidModel::deserialize(std::string_view bytes) {
  if (!bytes.starts_with(kMagic)) throw Error(ErrorKind::kModelFormat, "not a ckbvar LID model");
  Reader r(bytes.substr(kMagic.size()));
  const auto version = r.get<std::uint32_t>();
  if (version != kFormatVersion) {
    throw Error(ErrorKind::kModelFormat, "unsupported model version " + std::to_string(version));
  }
  LidModel m;
  m.config_.ngram_min = r.get<std::int32_t>();
  m.config_.ngram_max = r.get<std::int32_t>();
  m.config_.dim = r.get<std::int32_t>();
  m.config_.epochs = r.get<std::int32_t>();
  m.config_.learning_rate = r.get<double>();
  m.config_.buckets = r.get<std::uint32_t>();
  m.config_.seed = r.get<std::uint64_t>();
  m.config_.word_unigrams = r.get<std::uint8_t>() != 0;
  const auto level = r.get<std::uint8_t>();
  if (level > static_cast<std::uint8_t>(TagLevel::kSubdialect)) {
    throw Error(ErrorKind::kModelFormat, "bad level in model file");
  }
  m.level_ = static_cast<TagLevel>(level);
  m.training_accuracy_ = r.get<double>();
  try {
    m.config_.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kModelFormat, e.what());
  }
  const auto n_labels = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_labels; ++i) m.labels_.push_back(r.get_string());
  const auto dim = static_cast<std::size_t>(m.config_.dim);
  const auto n_rows = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_rows; ++i) {
    const auto bucket = r.get<std::uint32_t>();
    m.row_of_.emplace(bucket, i);
    m.row_bucket_.push_back(bucket);
    r.get_floats(m.input_, dim);
  }
  r.get_floats(m.output_, n_labels * dim);
  if (!r.done()) throw Error(ErrorKind::kModelFormat, "trailing bytes in model file");
  return m;
}

void LidModel::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

LidModel LidModel::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

}  // namespace ckbvar
