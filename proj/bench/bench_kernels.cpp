// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "qq/verify.hpp"

using namespace qq;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

FiniteField field_of(std::int64_t q) {
  const auto pk = *odd_prime_power(static_cast<std::uint64_t>(q));
  return FiniteField(pk.first, pk.second);
}

void label(benchmark::State& s) { s.SetLabel(s.range(1) ? "parallel" : "serial"); }

// Medial law holds for a = b, so the n^4 loop runs to completion.
void BM_MedialLaw(benchmark::State& s) {
  const auto f = field_of(s.range(0));
  const auto q = build_quadratic(f, 2, 2);
  for (auto _ : s) benchmark::DoNotOptimize(check_law(q, Law::medial, exec_of(s)));
  label(s);
}

void BM_AutBruteForce(benchmark::State& s) {
  const auto f = field_of(s.range(0));
  const auto [a, b] = valid_pairs(f).front();
  const auto q = build_quadratic(f, a, b);
  for (auto _ : s) benchmark::DoNotOptimize(aut_brute_force_count(q, Caps{}, exec_of(s)));
  label(s);
}

void BM_MinimalSubquasigroups(benchmark::State& s) {
  const auto f = field_of(s.range(0));
  const auto q = build_quadratic(f, 2, 2);
  for (auto _ : s) benchmark::DoNotOptimize(minimal_subquasigroups(f, q, exec_of(s)));
  label(s);
}

// One verify item per order and check, concurrently or one at a time.
void BM_VerifySweep(benchmark::State& s) {
  VerifyOptions opt;
  opt.orders = odd_prime_powers(3, static_cast<std::uint32_t>(s.range(0)));
  opt.exec = exec_of(s);
  for (auto _ : s) benchmark::DoNotOptimize(run_verify(opt).all_pass());
  label(s);
}

}  // namespace

BENCHMARK(BM_MedialLaw)->ArgsProduct({{27, 49}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AutBruteForce)->ArgsProduct({{25, 27}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalSubquasigroups)->ArgsProduct({{27, 49}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySweep)->ArgsProduct({{13}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
