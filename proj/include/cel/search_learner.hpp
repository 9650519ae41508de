#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/learning_problem.hpp"
#include "cel/refinement.hpp"

namespace cel {

class InstanceRetriever;

enum class SearchPreset { kCeloe, kOcel };

struct LearnerConfig {
  SearchPreset preset = SearchPreset::kCeloe;
  double max_runtime_seconds = 30.0;
  std::size_t max_iterations = 10000;
  double quality_threshold = 1.0;
  std::size_t max_hypothesis_length = 11;

  // CELOE heuristic weights.
  double start_bonus = 0.1;
  double gain_bonus = 0.3;
  double expansion_penalty = 0.1;
  double refinement_penalty = 0.0001;
  // OCEL length penalty per symbol.
  double length_penalty = 0.02;

  // The best-first search itself is deterministic; the seed is carried for
  // reporting and for interface parity with the evolutionary learner.
  std::uint64_t random_seed = 0;
  QualityMeasure quality_measure = QualityMeasure::kF1;
  std::size_t top_k = 10;
  bool parallel_evaluation = true;
  // After the threshold is reached, search refinements that keep the quality
  // for hypotheses with smaller retrieval sets, expanding at most
  // specialization_budget nodes.
  bool specialize_solutions = true;
  std::size_t specialization_budget = 256;

  bool use_negation = true;
  bool use_universal = true;
  bool use_cardinality = false;
  unsigned max_cardinality_bound = 3;
};

// Throws ValidationError for negative penalties or zero iterations.
void validate(const LearnerConfig& cfg);

struct SearchNode {
  ClassExpression expr;
  QualityResult confusion;
  double quality = 0.0;
  double accuracy = 0.0;
  std::size_t retrieval_size = 0;
  double heuristic = 0.0;
  std::size_t horizontal_expansion = 0;
  std::size_t refinement_count = 0;
  std::optional<std::size_t> parent;
  // Copied from the parent at creation; empty for the root.
  std::optional<double> parent_quality;
  std::optional<double> parent_accuracy;
  std::size_t depth = 0;
};

// CELOE: q + gain·(q − q_parent) − expansion·(he − len) − refinement·count
//        (+ start bonus at the root)
// OCEL:  acc − length_penalty·len + gain·(acc − acc_parent)
double score_node(const SearchNode& node, const LearnerConfig& cfg);

struct Hypothesis {
  ClassExpression expr;
  QualityResult confusion;
  double quality = 0.0;
  std::size_t retrieval_size = 0;
  std::size_t length = 0;
  std::string dl;
  std::string manchester;
};

Hypothesis make_hypothesis(const ClassExpression& e, const QualityResult& confusion, double quality,
                           std::size_t retrieval_size);

// Ranking: quality desc, retrieval size asc, length asc, Manchester rendering.
bool ranks_before(const Hypothesis& a, const Hypothesis& b);

struct SearchStats {
  std::size_t nodes_expanded = 0;
  std::size_t expressions_evaluated = 0;
  double wall_ms = 0.0;
  bool threshold_reached = false;
  // Best quality after the root evaluation and after each expansion.
  std::vector<double> best_quality_trace;
};

struct LearnResult {
  std::vector<Hypothesis> hypotheses;
  SearchStats stats;
};

// Refinement-based best-first search. Holds references to its inputs.
class SearchLearner {
 public:
  SearchLearner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy, const InstanceRetriever& retriever,
                LearnerConfig config);

  LearnResult learn(const BoundProblem& problem) const;

 private:
  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  const InstanceRetriever& retriever_;
  LearnerConfig config_;
};

}  // namespace cel
