#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "linexp/explain.hpp"
#include "linexp/xlc.hpp"

namespace {

using linexp::CategoricalFeature;
using linexp::Feature;
using linexp::Instance;
using linexp::XlcModel;

// 40 binary features with unit explanation power; every minimal explanation
// picks exactly 20 of them, C(40,20) in total.
XlcModel wide_model() {
  std::vector<Feature> features;
  for (int j = 0; j < 40; ++j) {
    CategoricalFeature cat;
    cat.values = {1.0, 0.0};
    features.emplace_back(std::move(cat));
  }
  return XlcModel(-19.5, std::move(features));
}

Instance wide_instance() {
  Instance inst;
  inst.values.assign(40, 1.0);
  return inst;
}

XlcModel random_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> domain(2, 4);
  std::uniform_real_distribution<double> weight(-10.0, 10.0);
  std::vector<Feature> features;
  for (int j = 0; j < 12; ++j) {
    CategoricalFeature cat;
    const int d = domain(rng);
    for (int r = 0; r < d; ++r) cat.values.push_back(weight(rng));
    features.emplace_back(std::move(cat));
  }
  return XlcModel(weight(rng), std::move(features));
}

Instance random_instance(const XlcModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst;
  for (const Feature& f : model.features()) {
    const auto& cat = std::get<CategoricalFeature>(f);
    std::uniform_int_distribution<std::size_t> value(1, cat.domain_size());
    inst.values.push_back(static_cast<double>(value(rng)));
  }
  return inst;
}

void BM_Evaluate(benchmark::State& state) {
  const XlcModel model = random_model(7);
  const Instance inst = random_instance(model, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linexp::evaluate(model, inst));
  }
}
BENCHMARK(BM_Evaluate);

void BM_DeriveProblem(benchmark::State& state) {
  const XlcModel model = random_model(7);
  const Instance inst = random_instance(model, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linexp::derive_problem(model, inst));
  }
}
BENCHMARK(BM_DeriveProblem);

void BM_FindOne(benchmark::State& state) {
  const XlcModel model = wide_model();
  const Instance inst = wide_instance();
  const linexp::ExplanationProblem problem = linexp::derive_problem(model, inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linexp::find_one(problem));
  }
}
BENCHMARK(BM_FindOne);

// Streams explanations off the wide problem; reports per-explanation rate.
void BM_Enumerate(benchmark::State& state) {
  const XlcModel model = wide_model();
  const Instance inst = wide_instance();
  const linexp::ExplanationProblem problem = linexp::derive_problem(model, inst);
  linexp::Enumerator it(problem);
  std::uint64_t yielded = 0;
  for (auto _ : state) {
    if (!it.advance()) {
      it = linexp::Enumerator(problem);
      it.advance();
    }
    ++yielded;
    benchmark::DoNotOptimize(it.current_features().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(yielded));
}
BENCHMARK(BM_Enumerate);

}  // namespace

BENCHMARK_MAIN();
