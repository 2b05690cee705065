#include <benchmark/benchmark.h>

#include "hornforge/exact_oracle.hpp"
#include "hornforge/reduction_3cnf.hpp"
#include "hornforge/small_fc.hpp"

using namespace hornforge;

namespace {

LcInstance instance(std::int64_t r) {
  RandomLcParams p;
  p.r = static_cast<std::size_t>(r);
  p.s = static_cast<std::size_t>(r);
  return refine(random_instance(p, 17));
}

void BM_BuildCnf(benchmark::State& state) {
  const LcInstance inst = instance(state.range(0));
  const ReductionParams params = make_params(inst, 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_cnf(inst, params));
}
BENCHMARK(BM_BuildCnf)->Arg(3)->Arg(6)->Arg(10);

void BM_Build3Cnf(benchmark::State& state) {
  const LcInstance inst = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_3cnf(inst, 2));
}
BENCHMARK(BM_Build3Cnf)->Arg(3)->Arg(6)->Arg(10);

// One query F({v(1)}) on a prepared chainer.
void BM_ForwardChain(benchmark::State& state) {
  const LcInstance inst = instance(state.range(0));
  const ReductionArtifact art = build_cnf(inst, make_params(inst, 2));
  ForwardChainer fc(art.phi);
  const VarId q[] = {art.varmap.v(1)};
  for (auto _ : state) benchmark::DoNotOptimize(fc.closure(q));
  state.counters["clauses"] = static_cast<double>(art.phi.clause_count());
}
BENCHMARK(BM_ForwardChain)->Arg(3)->Arg(6)->Arg(10);

void BM_ClosureTable(benchmark::State& state) {
  const LcInstance inst = refine(sat_to_lc({{1}}));
  const ReductionArtifact art = build_cnf(inst, make_params(inst, 1, 1, true));
  const std::vector<MaskClause> cl = to_mask_clauses(art.phi);
  for (auto _ : state) benchmark::DoNotOptimize(closure_table(cl, art.phi.num_vars()));
  state.counters["vars"] = static_cast<double>(art.phi.num_vars());
}
BENCHMARK(BM_ClosureTable);

void BM_MinimizeExact(benchmark::State& state) {
  // Micro instance: one edge, one label per side.
  LcSpec spec;
  spec.x_names = {"a"};
  spec.y_names = {"b"};
  spec.x_labels = {"p"};
  spec.y_labels = {"q"};
  spec.edges = {{0, 0}};
  spec.constraints = {{{0, 0}}};
  const LcInstance micro = refine(LcInstance(spec));
  const ReductionArtifact art = build_cnf(micro, make_params(micro, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_exact(art.phi));
  state.counters["vars"] = static_cast<double>(art.phi.num_vars());
}
BENCHMARK(BM_MinimizeExact)->Arg(1)->Arg(2);

void BM_MinimizeHeuristic(benchmark::State& state) {
  const LcInstance inst = instance(state.range(0));
  const ReductionArtifact art = build_cnf(inst, make_params(inst, 1));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_heuristic(art.phi));
}
BENCHMARK(BM_MinimizeHeuristic)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
