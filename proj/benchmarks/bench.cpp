#include <benchmark/benchmark.h>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"
#include "qcog/fitter.hpp"
#include "qcog/stats.hpp"

namespace {

const qcog::ConceptPairDataset& table4() {
  static auto dataset =
      qcog::load_dataset_file(std::string(QCOG_DATA_DIR) + "/table4.csv");
  return dataset;
}

void BM_ComputeDerived(benchmark::State& state) {
  const auto& dataset = table4();
  for (auto _ : state) {
    for (const auto& r : dataset.records) {
      benchmark::DoNotOptimize(qcog::compute_derived(r));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(dataset.records.size()));
}
BENCHMARK(BM_ComputeDerived);

void BM_ConstructFrame(benchmark::State& state) {
  const auto& record = table4().records[2];  // a double-overextended row
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcog::construct_frame(record));
  }
}
BENCHMARK(BM_ConstructFrame);

void BM_FitRecord(benchmark::State& state) {
  const auto& record = table4().records[2];
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcog::fit_record(record));
  }
}
BENCHMARK(BM_FitRecord);

void BM_FitDataset(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcog::fit_dataset(table4()));
  }
}
BENCHMARK(BM_FitDataset);

void BM_TCdf(benchmark::State& state) {
  double t = -10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcog::t_cdf(t, 37.0));
    t += 0.1;
    if (t > 10) t = -10;
  }
}
BENCHMARK(BM_TCdf);

}  // namespace

BENCHMARK_MAIN();
