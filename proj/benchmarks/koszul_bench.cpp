#include "koszul/coalgebra.hpp"
#include "koszul/conilpotent.hpp"
#include "koszul/echelon.hpp"
#include "koszul/galois.hpp"
#include "koszul/groups.hpp"
#include "koszul/homology.hpp"
#include "koszul/koszulity.hpp"
#include "koszul/lie.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

using namespace koszul;

namespace {

std::vector<std::string> labels(std::size_t d) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Field field_arg(std::int64_t code) { return code ? Field::prime(static_cast<std::uint32_t>(code)) : Field::rationals(); }

Mat random_mat(Field f, std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> val(-3, 3);
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, val(rng));
  return m;
}

// args: field (0 = Q), size
void BM_Rank(benchmark::State& st) {
  const Mat m = random_mat(field_arg(st.range(0)), static_cast<std::size_t>(st.range(1)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Args({2, 64})->Args({2, 256})->Args({3, 128})->Args({32003, 128})->Args({0, 24})->Args({0, 48});

// bar-complex homology of the polynomial algebra, args: generators, window
void BM_AlgebraHomology(benchmark::State& st) {
  const auto p = polynomial_algebra(Field::prime(3), labels(static_cast<std::size_t>(st.range(0))));
  const int w = static_cast<int>(st.range(1));
  const GradedAlgebraTable a = table_from_presentation(p, nullptr, w).algebra;
  for (auto _ : st) benchmark::DoNotOptimize(algebra_homology(a, {w, w}));
}
BENCHMARK(BM_AlgebraHomology)->Args({2, 4})->Args({2, 6})->Args({3, 4})->Unit(benchmark::kMillisecond);

// one certification method on the exterior algebra; args: method, generators
void BM_Certify(benchmark::State& st) {
  const auto p = exterior_algebra(Field::prime(3), labels(static_cast<std::size_t>(st.range(1))));
  CertifyOptions opt;
  opt.methods = {static_cast<Method>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(certify(p, nullptr, 4, opt));
  st.SetLabel(to_string(static_cast<Method>(st.range(0))));
}
BENCHMARK(BM_Certify)->ArgsProduct({{0, 1, 2}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_Duality(benchmark::State& st) {
  const Field f = Field::prime(3);
  const auto a = polynomial_algebra(f, labels(2)), b = polynomial_algebra(f, labels(3));
  Mat inc(f, 3, 2);
  inc.set(0, 0, 1);
  inc.set(1, 1, 1);
  const MorphismPresentation m = morphism_from_presentations(a, b, inc, 4);
  for (auto _ : st) benchmark::DoNotOptimize(duality_crosscheck(m, {4, 4}));
}
BENCHMARK(BM_Duality)->Unit(benchmark::kMillisecond);

// comparison map H^*(Nilp C) -> H^*(C) for a catalog group; arg: catalog index
void BM_GroupComparison(benchmark::State& st) {
  const GroupTable& g = group_catalog()[static_cast<std::size_t>(st.range(0))];
  for (auto _ : st) benchmark::DoNotOptimize(group_comparison(g, 2, 2));
  st.SetLabel(g.name);
}
BENCHMARK(BM_GroupComparison)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_GradingPipeline(benchmark::State& st) {
  const FDCoalgebra c = group_coalgebra(catalog_group("Z2^3"), Field::prime(2));
  for (auto _ : st) benchmark::DoNotOptimize(grading_pipeline(c, nullptr, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_GradingPipeline)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FreeLieHall(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(free_lie_dims_hall(3, LieFlavor::Lie, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_FreeLieHall)->Arg(6)->Arg(9);

void BM_SteinbergTower(benchmark::State& st) {
  FieldSpec s;
  s.kind = FieldSpec::Kind::LaurentTower;
  s.q = 7;
  s.l = 3;
  s.height = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(steinberg_pipeline(milnor_tower(s, 4), 4));
}
BENCHMARK(BM_SteinbergTower)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
