#include <benchmark/benchmark.h>

#include <vector>

#include <irrep/decompose.hpp>
#include <irrep/group.hpp>
#include <irrep/su2.hpp>

using namespace irrep;

namespace {

group_table cyclic_table(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = (i + j) % n + 1;
  return group_table::from_cayley(rows);
}

cmatrix random_hermitian(int n, rng& gen) {
  cmatrix h(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) h(i, j) = complexd(gen.uniform_signed(), gen.uniform_signed());
  return h + h.adjoint();
}

}  // namespace

static void BM_HermitianEig(benchmark::State& state) {
  rng gen(1);
  const cmatrix a = random_hermitian(static_cast<int>(state.range(0)), gen);
  for (auto _ : state) {
    auto eig = hermitian_eig(a);
    benchmark::DoNotOptimize(eig.vectors.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void BM_Kron(benchmark::State& state) {
  rng gen(2);
  const int n = static_cast<int>(state.range(0));
  const cmatrix a = random_hermitian(n, gen);
  const cmatrix b = random_hermitian(n, gen);
  for (auto _ : state) {
    auto k = kron(a, b);
    benchmark::DoNotOptimize(k.data());
  }
}
BENCHMARK(BM_Kron)->RangeMultiplier(2)->Range(4, 32);

static void BM_RegularDecomposeCyclic(benchmark::State& state) {
  const auto table = cyclic_table(static_cast<int>(state.range(0)));
  const auto rep = regular_rep(table);
  decompose_config config;
  config.seed = 1;
  for (auto _ : state) {
    auto result = decompose(regular_state_builder(table), rep.matrices, config);
    benchmark::DoNotOptimize(result.cg.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RegularDecomposeCyclic)->DenseRange(4, 24, 4)->Complexity();

static void BM_Su2PairCG(benchmark::State& state) {
  // spin (k/2) x ((k-1)/2)
  const int two_j = static_cast<int>(state.range(0));
  const spin_system system({spin{two_j}, spin{two_j - 1}});
  const auto probes = su2_probes(system, 1);
  decompose_config config;
  config.seed = 1;
  for (auto _ : state) {
    auto result = decompose(su2_state_builder(system), probes, config);
    auto rotation = jz_rotation(result.cg, system, result.blocks);
    benchmark::DoNotOptimize(rotation.cz.data());
  }
  state.SetComplexityN(system.dim());
}
BENCHMARK(BM_Su2PairCG)->DenseRange(2, 8, 2)->Complexity();

static void BM_LadderOracle(benchmark::State& state) {
  const int two_j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto oracle = ladder_oracle({spin{two_j}, spin{two_j - 1}});
    benchmark::DoNotOptimize(oracle.matrix.data());
  }
}
BENCHMARK(BM_LadderOracle)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
