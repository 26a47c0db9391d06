#include <benchmark/benchmark.h>

#include <cmath>

#include "symclose/conditions.hpp"
#include "symclose/isometry.hpp"
#include "symclose/orbit.hpp"
#include "symclose/rng.hpp"
#include "symclose/witness.hpp"

using namespace symclose;

namespace {

Subspace bench_subspace(int n, int dim, std::uint64_t seed) {
  rng::Stream stream(seed);
  std::vector<Vector> vectors;
  for (int j = 0; j < dim; ++j) vectors.push_back(stream.gaussian_vector(n));
  return orthonormalize(vectors);
}

void BM_PrincipalAngles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Subspace h1 = bench_subspace(n, n / 2, 1);
  Subspace h2 = bench_subspace(n, n / 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(principal_angles(h1, h2));
}
BENCHMARK(BM_PrincipalAngles)->Arg(8)->Arg(16)->Arg(32);

void BM_DoubleReflectionPower(benchmark::State& state) {
  const int n = 8;
  Subspace h1 = bench_subspace(n, 4, 3);
  Subspace h2 = bench_subspace(n, 3, 4);
  rng::Stream stream(5);
  Vector x = stream.unit_vector(n);
  const long m = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(double_reflection_power(h1, h2, x, m));
}
BENCHMARK(BM_DoubleReflectionPower)->Arg(1)->Arg(64)->Arg(4096);

void BM_FiniteClosureDihedral(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Vector a(2), b(2);
  a << 1, 0;
  b << std::cos(M_PI / m), std::sin(M_PI / m);
  std::vector<OrthogonalMap> gens = {reflection(Subspace::line(a)),
                                     reflection(Subspace::line(b))};
  for (auto _ : state) benchmark::DoNotOptimize(finite_closure(gens, 10000, 1e-6));
}
BENCHMARK(BM_FiniteClosureDihedral)->Arg(4)->Arg(16)->Arg(64);

void BM_StabilizerSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Subspace h = bench_subspace(n, 1, 7);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer_sample(h, seed++));
}
BENCHMARK(BM_StabilizerSample)->Arg(3)->Arg(8)->Arg(32);

void BM_OrbitSampling(benchmark::State& state) {
  auto witness = lines_witness(3);
  std::vector<Generator> gens;
  for (const auto& h : witness.subspaces) gens.push_back(reflection(h));
  rng::Stream stream(11);
  Vector x = stream.unit_vector(3);
  const long budget = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_orbit(gens, x, budget, {}));
  state.SetItemsProcessed(state.iterations() * budget);
}
BENCHMARK(BM_OrbitSampling)->Arg(1000)->Arg(100000);

void BM_CoveringRadius(benchmark::State& state) {
  rng::Stream stream(13);
  OrbitSample sample;
  sample.seed_point = stream.unit_vector(4);
  const long count = state.range(0);
  for (long j = 0; j < count; ++j) sample.points.push_back(stream.unit_vector(4));
  SubSphere target{Subspace::full(4), Vector::Zero(4), 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(covering_radius(sample, target, 2000, 17));
  state.SetItemsProcessed(state.iterations() * count * 2000);
}
BENCHMARK(BM_CoveringRadius)->Arg(10000)->Arg(100000);

void BM_RelationSearch(benchmark::State& state) {
  std::vector<AngleSpec> specs = {AngleSpec::exact_cosine(Rational(1, 3)),
                                  AngleSpec::exact_cosine(Rational(1, 5))};
  const long long bound = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(heuristic_independence(specs, bound, 64));
}
BENCHMARK(BM_RelationSearch)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
