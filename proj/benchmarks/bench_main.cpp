#include <benchmark/benchmark.h>

#include <random>

#include "scorevote/oracle.hpp"
#include "scorevote/projection.hpp"
#include "scorevote/properties.hpp"
#include "scorevote/score.hpp"
#include "scorevote/welfare.hpp"

namespace {

using namespace scorevote;

ElectionInstance random_weighted_instance(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ElectionInstance instance;
  instance.object_names = ElectionInstance::default_names(m);
  Rational total(0);
  for (int o = 0; o < m; ++o) {
    const long long w = 1 + static_cast<long long>(rng() % 10);
    instance.weights.weights.emplace_back(w);
    total += w;
  }
  instance.budget = total / 2;
  instance.profile.num_objects = m;
  instance.profile.kind = BallotKind::Approval;
  for (int v = 0; v < n; ++v) {
    std::vector<int> approved;
    for (int o = 0; o < m; ++o)
      if (rng() % 2) approved.push_back(o);
    instance.profile.ballots.push_back(Ballot::approval(m, approved));
  }
  return instance;
}

void BM_UtilitarianDp(benchmark::State& state) {
  const auto instance = random_weighted_instance(static_cast<int>(state.range(0)), 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_utilitarian_dp(instance));
}
BENCHMARK(BM_UtilitarianDp)->Arg(8)->Arg(12);

void BM_FairExact(benchmark::State& state) {
  const auto instance = random_weighted_instance(static_cast<int>(state.range(0)), 5, 11);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fair_exact(instance));
}
BENCHMARK(BM_FairExact)->Arg(10)->Arg(14);

void BM_Winners(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ScoreFunction sf = knapsack_matrix(m);
  TallyVector e(static_cast<std::size_t>(m));
  std::mt19937_64 rng(3);
  for (auto& c : e) c = static_cast<long long>(rng() % 50);
  for (auto _ : state) benchmark::DoNotOptimize(winners(sf, e, m / 2));
}
BENCHMARK(BM_Winners)->Arg(8)->Arg(16);

void BM_TotalitySweep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  ScoreMatrix matrix = ScoreMatrix::identity(m);
  matrix.at(m - 1, 0) = Rational(1, 2);
  const ScoreFunction sf{matrix, TieBreak::natural(m)};
  for (auto _ : state) benchmark::DoNotOptimize(is_total(sf));
}
BENCHMARK(BM_TotalitySweep)->Arg(3)->Arg(5);

void BM_CcpEnumeration(benchmark::State& state) {
  const ScoreFunction sf = knapsack_matrix(3);
  const CcpBounds bounds{static_cast<long long>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(check_ccp(sf, bounds));
}
BENCHMARK(BM_CcpEnumeration)->Arg(3)->Arg(5);

void BM_ProjectClosure(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(13);
  ScoreMatrix matrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      matrix.at(i, j) = Rational(static_cast<long long>(rng() % 9) - 4);
  const TieBreak tiebreak = TieBreak::natural(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(project_onto_closure(matrix, tiebreak));
}
BENCHMARK(BM_ProjectClosure)->Arg(2)->Arg(3);

void BM_OracleScoreExhaustive(benchmark::State& state) {
  const Mechanism mech = Mechanism::score_voting(knapsack_matrix(4));
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  for (auto _ : state) benchmark::DoNotOptimize(find_manipulation(mech, bounds));
}
BENCHMARK(BM_OracleScoreExhaustive);

}  // namespace

BENCHMARK_MAIN();
