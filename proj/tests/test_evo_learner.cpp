#include <gtest/gtest.h>

#include <algorithm>

#include "cel/error.hpp"
#include "cel/evo_learner.hpp"
#include "cel/reasoner.hpp"
#include "cel/syntax.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using testing::fam;
using CE = ClassExpression;

class Evo : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  Reasoner reasoner{family.kb, family.hierarchy};
  BoundProblem problem = bind(testing::married_female_problem(), family.kb);

  EvoLearner learner(EvoConfig cfg) const { return EvoLearner(family.kb, family.hierarchy, reasoner, cfg); }
};

std::vector<std::string> keys(const std::vector<CE>& population) {
  std::vector<std::string> out;
  for (const auto& e : population) out.push_back(canonical_key(e));
  return out;
}

TEST_F(Evo, InitialPopulationIsSeededAndContainsTheTargetAtoms) {
  const CE female = CE::named(fam("Female"));
  const CE married = CE::some(fam("married"), CE::top());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EvoConfig cfg;
    cfg.random_seed = seed;
    const auto population = learner(cfg).init_population(problem);
    ASSERT_EQ(population.size(), 100U);
    EXPECT_NE(std::find(population.begin(), population.end(), female), population.end()) << seed;
    EXPECT_NE(std::find(population.begin(), population.end(), married), population.end()) << seed;
    EXPECT_EQ(keys(population), keys(learner(cfg).init_population(problem)));
    for (const auto& e : population) {
      // Every seed individual covers the positive it was sampled from.
      EXPECT_GE(evaluate(reasoner, problem, e).tp, 1U) << render(e, Syntax::kDL);
    }
  }
}

TEST_F(Evo, ExampleWithoutAssertionsContributesTop) {
  auto triples = family.triples;
  const Iri loner = fam("Loner");
  triples.push_back({loner, Iri(vocab::kRdfType), Iri(vocab::kOwlNamedIndividual)});
  const auto loaded = testing::load_triples(triples);
  const Reasoner r(loaded.kb, loaded.hierarchy);
  LearningProblem lp;
  lp.positives = {loner};
  const auto population = EvoLearner(loaded.kb, loaded.hierarchy, r, EvoConfig{}).init_population(bind(lp, loaded.kb));
  for (const auto& e : population) EXPECT_TRUE(e.is_top()) << render(e, Syntax::kDL);
}

TEST_F(Evo, FitnessHasParsimonyPressure) {
  const EvoLearner evo = learner(EvoConfig{});
  const QualityResult perfect{3, 0, 2, 0};
  EXPECT_DOUBLE_EQ(evo.fitness(perfect, CE::some(fam("married"), CE::top())), 1.0 - 0.005 * 3);
}

TEST_F(Evo, SolvesMarriedFemaleForFixedSeeds) {
  std::size_t solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EvoConfig cfg;
    cfg.random_seed = seed;
    const EvoResult result = learner(cfg).evolve(problem);
    EXPECT_LE(result.stats.generations_run, 50U);
    if (result.best.confusion.f1() == Rational{1, 1}) ++solved;
  }
  EXPECT_GE(solved, 9U);
}

TEST_F(Evo, DeterministicPerSeed) {
  EvoConfig cfg;
  cfg.random_seed = 42;
  cfg.stop_on_perfect = false;
  cfg.generations = 15;
  const EvoResult a = learner(cfg).evolve(problem);
  const EvoResult b = learner(cfg).evolve(problem);
  EXPECT_EQ(a.stats.population_trace, b.stats.population_trace);
  EXPECT_EQ(a.stats.best_fitness_trace, b.stats.best_fitness_trace);
  EXPECT_EQ(a.best.manchester, b.best.manchester);
  cfg.parallel_evaluation = false;
  EXPECT_EQ(learner(cfg).evolve(problem).stats.population_trace, a.stats.population_trace);
}

TEST_F(Evo, EveryIndividualIsNormalizedAndBounded) {
  EvoConfig cfg;
  cfg.random_seed = 7;
  cfg.stop_on_perfect = false;
  cfg.generations = 12;
  cfg.max_tree_length = 9;
  cfg.mutation_rate = 0.5;
  const EvoResult result = learner(cfg).evolve(problem);
  ASSERT_EQ(result.stats.population_trace.size(), 13U);
  for (const auto& generation : result.stats.population_trace) {
    ASSERT_EQ(generation.size(), cfg.population_size);
    for (const auto& key : generation) {
      const CE e = parse_expression(key, family.kb);
      EXPECT_EQ(canonical_key(e), key);
      EXPECT_LE(expression_length(e), 9U) << key;
    }
  }
}

TEST_F(Evo, BestFitnessIsMonotoneUnderElitism) {
  LearningProblem lp;
  lp.positives = {fam("F10M171"), fam("F10F179"), fam("F10F177")};
  lp.negatives = {fam("F10M180"), fam("F10F174")};
  const BoundProblem hard = bind(lp, family.kb);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EvoConfig cfg;
    cfg.random_seed = seed;
    cfg.generations = 20;
    const EvoResult result = learner(cfg).evolve(hard);
    const auto& trace = result.stats.best_fitness_trace;
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GE(trace[i], trace[i - 1]);
    const QualityResult fresh = evaluate(reasoner, hard, result.best.expr);
    EXPECT_EQ(fresh, result.best.confusion);
  }
}

TEST_F(Evo, IdenticalPopulationIsClosedWithoutMutation) {
  EvoConfig cfg;
  cfg.mutation_rate = 0.0;
  cfg.crossover_rate = 1.0;
  cfg.generations = 10;
  cfg.population_size = 30;
  const CE female = CE::named(fam("Female"));
  const EvoResult result = learner(cfg).evolve_from(std::vector<CE>(30, female), problem);
  EXPECT_EQ(result.best.expr, female);
  for (const auto& generation : result.stats.population_trace) {
    for (const auto& key : generation) EXPECT_EQ(key, canonical_key(female));
  }
}

TEST(EvoConfigValidation, RejectsBadSettings) {
  EvoConfig cfg;
  cfg.crossover_rate = 1.5;
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg = {};
  cfg.elitism_count = cfg.population_size;
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg = {};
  cfg.mutation_rate = -0.1;
  EXPECT_THROW(validate(cfg), ValidationError);
}

}  // namespace
}  // namespace cel
