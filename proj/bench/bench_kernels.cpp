// OpenMP kernels against their serial references:
//   instances vs instances_serial, and parallel vs serial batch evaluation
//   inside the search learner.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/reasoner.hpp"
#include "cel/search_learner.hpp"

namespace {

using cel::ClassExpression;
using cel::Iri;

constexpr const char* kNs = "http://bench.example.org/";

Iri node(const std::string& kind, std::size_t i) { return Iri(kNs + kind + std::to_string(i)); }

struct World {
  cel::KnowledgeBase kb;
  cel::ClassHierarchy hierarchy;
};

// Random graph: 16 classes in two chains, 2 roles, about 4 edges per node.
const World& world(std::size_t individuals) {
  static std::map<std::size_t, std::unique_ptr<World>> cache;
  auto& slot = cache[individuals];
  if (slot) return *slot;

  const Iri type(cel::vocab::kRdfType);
  std::vector<cel::Triple> triples;
  for (std::size_t c = 0; c < 16; ++c) {
    triples.push_back({node("C", c), type, Iri(cel::vocab::kOwlClass)});
    if (c % 8 != 0) triples.push_back({node("C", c), Iri(cel::vocab::kRdfsSubClassOf), node("C", c - 1)});
  }
  for (std::size_t r = 0; r < 2; ++r) triples.push_back({node("r", r), type, Iri(cel::vocab::kOwlObjectProperty)});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, individuals - 1);
  for (std::size_t i = 0; i < individuals; ++i) {
    triples.push_back({node("i", i), type, Iri(cel::vocab::kOwlNamedIndividual)});
    triples.push_back({node("i", i), type, node("C", rng() % 16)});
    for (int e = 0; e < 2; ++e) triples.push_back({node("i", i), node("r", rng() % 2), node("i", pick(rng))});
  }
  slot = std::make_unique<World>();
  slot->kb = cel::build_knowledge_base(triples);
  slot->hierarchy = cel::classify(slot->kb);
  return *slot;
}

ClassExpression probe() {
  return cel::normalize(ClassExpression::intersection(
      {ClassExpression::named(node("C", 1)),
       ClassExpression::some(node("r", 0), ClassExpression::union_of({ClassExpression::named(node("C", 9)),
                                                                       ClassExpression::only(node("r", 1), ClassExpression::complement(ClassExpression::named(node("C", 3))))})),
       ClassExpression::min(2, node("r", 1), ClassExpression::top())}));
}

void BM_InstancesParallel(benchmark::State& state) {
  const World& w = world(static_cast<std::size_t>(state.range(0)));
  const cel::Reasoner reasoner(w.kb, w.hierarchy);
  const ClassExpression e = probe();
  for (auto _ : state) benchmark::DoNotOptimize(reasoner.instances(e));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_InstancesSerial(benchmark::State& state) {
  const World& w = world(static_cast<std::size_t>(state.range(0)));
  const cel::Reasoner reasoner(w.kb, w.hierarchy);
  const ClassExpression e = probe();
  for (auto _ : state) benchmark::DoNotOptimize(reasoner.instances_serial(e));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void run_search(benchmark::State& state, bool parallel) {
  const World& w = world(static_cast<std::size_t>(state.range(0)));
  const cel::Reasoner reasoner(w.kb, w.hierarchy);
  cel::LearningProblem lp;
  for (std::size_t i = 0; i < 40; ++i) (i % 2 == 0 ? lp.positives : lp.negatives).push_back(node("i", i * 13));
  const cel::BoundProblem problem = cel::bind(lp, w.kb);
  cel::LearnerConfig cfg;
  cfg.max_iterations = 40;
  cfg.quality_threshold = 1.0;
  cfg.specialize_solutions = false;
  cfg.parallel_evaluation = parallel;
  const cel::SearchLearner learner(w.kb, w.hierarchy, reasoner, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(learner.learn(problem));
}

void BM_SearchParallelEvaluation(benchmark::State& state) { run_search(state, true); }
void BM_SearchSerialEvaluation(benchmark::State& state) { run_search(state, false); }

}  // namespace

BENCHMARK(BM_InstancesParallel)->Arg(1000)->Arg(20000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InstancesSerial)->Arg(1000)->Arg(20000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SearchParallelEvaluation)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerialEvaluation)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
