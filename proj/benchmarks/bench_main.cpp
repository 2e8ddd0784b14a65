#include <benchmark/benchmark.h>

#include <random>

#include "sclean/analysis.hpp"
#include "sclean/oracles.hpp"
#include "sclean/quad_z5.hpp"

using namespace sclean;

namespace {

Matrix random_matrix(const Ring& r, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_element(r, rng));
  return Matrix(r, n, n, e);
}

void BM_CharPoly(benchmark::State& state) {
  const Ring r = Ring::zmod(360);
  const Matrix a = random_matrix(r, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPoly)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_CharPolyZloc(benchmark::State& state) {
  const Ring r = Ring::zloc(5);
  const Matrix a = random_matrix(r, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPolyZloc)->Arg(2)->Arg(4)->Arg(8);

void BM_GsrcSearch(benchmark::State& state) {
  const Ring r = Ring::zmod(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<MonicPoly> polys;
  for (int i = 0; i < 32; ++i) {
    std::vector<Element> c;
    for (int k = 0; k < 3; ++k) c.push_back(random_element(r, rng));
    c.push_back(r.one());
    polys.emplace_back(Poly(r, c));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gsrc_search(polys[i++ % polys.size()]));
}
BENCHMARK(BM_GsrcSearch)->Arg(12)->Arg(72)->Arg(360);

void BM_StrongCleanBruteforce(benchmark::State& state) {
  const Ring r = Ring::zmod(state.range(0));
  const Matrix a = companion(MonicPoly::from_ints(r, {1, 1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(strongly_clean_bruteforce(a));
}
BENCHMARK(BM_StrongCleanBruteforce)->Arg(4)->Arg(9)->Arg(12);

void BM_DecideStronglyClean(benchmark::State& state) {
  const Ring r = Ring::zmod(360);
  const Matrix a = random_matrix(r, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(decide_strongly_clean(a));
}
BENCHMARK(BM_DecideStronglyClean)->Arg(2)->Arg(3)->Arg(4);

void BM_TheoremAudit(benchmark::State& state) {
  AuditOptions o;
  o.workers = 1;
  const Ring r = Ring::zmod(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_main_audit(r, 2, o));
}
BENCHMARK(BM_TheoremAudit)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PierceGlue(benchmark::State& state) {
  const Ring r = Ring::zmod(2 * 3 * 5 * 7 * 11 * 13);
  const auto cos = pierce_decomposition(r);
  std::mt19937_64 rng(5);
  const Element x = random_element(r, rng);
  for (auto _ : state) {
    const auto parts = restrictions(x);
    std::vector<GlueBlock> blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) blocks.push_back({cos.idempotents()[i], parts[i]});
    benchmark::DoNotOptimize(pierce_glue(r, blocks));
  }
}
BENCHMARK(BM_PierceGlue);

void BM_Z5Audit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(z5::run_audit());
}
BENCHMARK(BM_Z5Audit);

}  // namespace

BENCHMARK_MAIN();
