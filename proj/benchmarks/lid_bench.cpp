#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ckbvar/lid.hpp"

using namespace ckbvar;

namespace {

std::string line(std::mt19937& rng, const std::vector<std::string>& letters) {
  std::string s;
  for (int w = 0; w < 8; ++w) {
    if (w) s += ' ';
    for (int i = 0; i < 5; ++i) s += letters[rng() % letters.size()];
  }
  return s;
}

std::vector<LabeledExample> data(int per_class) {
  static const std::vector<std::string> latin = {"a", "b", "c", "d", "e", "k", "m", "n", "r", "x"};
  static const std::vector<std::string> arabic = {"ب", "پ", "ت", "ج", "چ", "د", "ر", "ز", "ک", "م"};
  std::mt19937 rng(0);
  std::vector<LabeledExample> out;
  for (int i = 0; i < per_class; ++i) {
    out.push_back({normalize(line(rng, latin)), "kmr"});
    out.push_back({normalize(line(rng, arabic)), "ckb"});
  }
  return out;
}

LidConfig config() {
  LidConfig c;
  c.dim = 16;
  c.epochs = 5;
  c.buckets = 1u << 18;
  return c;
}

}  // namespace

static void BM_LidTrain(benchmark::State& state) {
  const auto ex = data(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(LidModel::train(ex, config()));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * ex.size()));
}
BENCHMARK(BM_LidTrain)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_LidPredict(benchmark::State& state) {
  const auto ex = data(100);
  const LidModel m = LidModel::train(ex, config());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(m.predict(ex[i++ % ex.size()].text));
}
BENCHMARK(BM_LidPredict);
