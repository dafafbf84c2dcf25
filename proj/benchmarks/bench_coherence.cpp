#include <benchmark/benchmark.h>

#include "crq/propagation.hpp"

using namespace crq;

namespace {

const Param X{"x", ParamRole::probability};
const Param Y{"y", ParamRole::probability};
const Param MU{"mu", ParamRole::prevision};

ConditionalEvent AH() { return cond(ev_atom("A"), ev_atom("H")); }
ConditionalEvent BK() { return cond(ev_atom("B"), ev_atom("K")); }

void BM_constituents(benchmark::State& state) {
  std::vector<PartitionedObject> fam;
  const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "I"};
  for (int i = 0; i < state.range(0); ++i) {
    PartitionedObject po;
    EventPtr cons = ev_atom(names[2 * i]);
    po.antecedent = ev_atom(names[2 * i + 1]);
    po.pieces = {ev_and(cons, po.antecedent), ev_and(ev_not(cons), po.antecedent)};
    fam.push_back(po);
  }
  for (auto _ : state) benchmark::DoNotOptimize(constituents(fam));
}
BENCHMARK(BM_constituents)->Arg(2)->Arg(3)->Arg(4);

void BM_check_coherence(benchmark::State& state) {
  Assessment a;
  a.assess(indicator(AH(), X), Rat(1, 2));
  a.assess(indicator(BK(), Y), Rat(1, 2));
  a.assess(iterate_structural(StructuralIterKind::S, AH(), BK(), X, Y, MU), Rat(2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(check_coherence(a).coherent);
}
BENCHMARK(BM_check_coherence);

void BM_dutch_book(benchmark::State& state) {
  Assessment a;
  ConditionalEvent A = cond(ev_atom("A"), ev_true());
  ConditionalEvent nA = cond(ev_not(ev_atom("A")), ev_true());
  a.assess(indicator(A, X), Rat(3, 10));
  a.assess(indicator(nA, Y), Rat(9, 10));
  for (auto _ : state) benchmark::DoNotOptimize(dutch_book(a));
}
BENCHMARK(BM_dutch_book);

void BM_extension_interval(benchmark::State& state) {
  BoundFamily bf = standard_family(BoundKind::iter_K, Rat(1, 2), Rat(3, 4));
  for (auto _ : state) benchmark::DoNotOptimize(extension_interval(bf.assessment));
}
BENCHMARK(BM_extension_interval);

}  // namespace

BENCHMARK_MAIN();
