#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/learning_problem.hpp"
#include "cel/search_learner.hpp"

namespace cel {

class InstanceRetriever;

struct EvoConfig {
  std::size_t population_size = 100;
  std::size_t generations = 50;
  std::size_t tournament_size = 7;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::size_t max_tree_length = 11;
  std::size_t elitism_count = 1;
  std::uint64_t random_seed = 0;
  // fitness = f1 − parsimony · length
  double parsimony = 0.005;
  bool stop_on_perfect = true;
  bool parallel_evaluation = true;
  std::size_t top_k = 10;
};

// Throws ValidationError naming the offending field.
void validate(const EvoConfig& cfg);

struct EvoStats {
  // Generation 0 is the initial population.
  std::size_t generations_run = 0;
  std::size_t evaluations = 0;
  double wall_ms = 0.0;
  // Best-ever fitness / F1 after each generation.
  std::vector<double> best_fitness_trace;
  std::vector<double> best_f1_trace;
  // Canonical keys of every individual in every generation.
  std::vector<std::vector<std::string>> population_trace;
};

struct EvoResult {
  Hypothesis best;
  // Distinct evaluated individuals by fitness desc, length asc, rendering.
  std::vector<Hypothesis> ranked;
  EvoStats stats;
};

// Genetic programming over expression trees. Holds references to its inputs.
class EvoLearner {
 public:
  EvoLearner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy, const InstanceRetriever& retriever,
             EvoConfig config);

  // Example-driven random-walk seeding; deterministic for a given seed.
  std::vector<ClassExpression> init_population(const BoundProblem& problem) const;

  EvoResult evolve(const BoundProblem& problem) const;
  // Evolution from an explicit starting population.
  EvoResult evolve_from(std::vector<ClassExpression> population, const BoundProblem& problem) const;

  double fitness(const QualityResult& q, const ClassExpression& e) const;

 private:
  class Run;

  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  const InstanceRetriever& retriever_;
  EvoConfig config_;
};

}  // namespace cel
