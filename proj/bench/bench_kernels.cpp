// Serial reference kernels against their OpenMP counterparts.

#include "nlslab/lambda_set.hpp"
#include "nlslab/nls_sim.hpp"
#include "nlslab/toy_model.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <random>

using namespace nlslab;

namespace {

CVec random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVec a(n);
  for (auto& x : a) x = 0.1 * cplx(g(rng), g(rng));
  return a;
}

const NlsModel& box_model(std::int64_t M) {
  static std::map<std::int64_t, NlsModel> cache;
  auto it = cache.find(M);
  if (it == cache.end())
    it = cache.emplace(M, NlsModel(TruncationRegion::box(M), OmegaSpec::sqrt_of(2))).first;
  return it->second;
}

const NlsModel& fixture_model() {
  static const NlsModel m = [] {
    auto set = load_lambda_set(NLSLAB_FIXTURE_DIR "/n3_seed5_box2_p3q2.json");
    return NlsModel(TruncationRegion::lambda_closure(set), OmegaSpec::sqrt_of(2));
  }();
  return m;
}

void run_convolve(benchmark::State& state, const NlsModel& m, bool parallel) {
  CVec rho = random_state(m.size(), 1), g(m.size());
  for (auto _ : state) {
    if (parallel)
      convolve_parallel(m.table(), rho, g);
    else
      convolve_serial(m.table(), rho, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.counters["modes"] = static_cast<double>(m.size());
  state.counters["entries"] = static_cast<double>(m.table().entries.size());
}

void BM_convolve_box_serial(benchmark::State& s) { run_convolve(s, box_model(s.range(0)), false); }
void BM_convolve_box_parallel(benchmark::State& s) { run_convolve(s, box_model(s.range(0)), true); }
void BM_convolve_fixture_serial(benchmark::State& s) { run_convolve(s, fixture_model(), false); }
void BM_convolve_fixture_parallel(benchmark::State& s) { run_convolve(s, fixture_model(), true); }

void BM_field_rotating(benchmark::State& state) {
  const auto& m = fixture_model();
  CVec r = random_state(m.size(), 2), dr(m.size());
  const bool parallel = state.range(0) != 0;
  double t = 0;
  for (auto _ : state) {
    m.field_rotating(t, r, dr, parallel);
    t += 1e-3;
    benchmark::DoNotOptimize(dr.data());
  }
}

void BM_transfer_search(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_transfer_orbit(static_cast<int>(state.range(0)), 1e-2));
}

}  // namespace

BENCHMARK(BM_convolve_box_serial)->Arg(4)->Arg(8);
BENCHMARK(BM_convolve_box_parallel)->Arg(4)->Arg(8);
BENCHMARK(BM_convolve_fixture_serial);
BENCHMARK(BM_convolve_fixture_parallel);
BENCHMARK(BM_field_rotating)->Arg(0)->Arg(1);
BENCHMARK(BM_transfer_search)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
