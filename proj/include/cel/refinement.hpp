#pragma once

#include <cstddef>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"

namespace cel {

class InstanceRetriever;

struct RefinementConfig {
  std::size_t max_length = 8;
  bool use_negation = true;
  bool use_universal = true;
  bool use_cardinality = false;
  unsigned max_cardinality_bound = 3;
};

// Length-bounded downward refinement operator over NNF expressions:
//   ρ(⊤)      top children, ¬L for leaves L, ∃r.⊤ and ∀r.⊤ per role,
//             A ⊔ B for distinct top children
//   ρ(A)      direct subclasses of A, A ⊓ e for e ∈ ρ(⊤)
//   ρ(¬A)     ¬A' for direct superclasses A' ≠ ⊤, ¬A ⊓ e for e ∈ ρ(⊤)
//   ρ(∃r.C)   ∃r.C', ≥2 r.C (cardinality on), ∃r.C ⊓ e
//   ρ(∀r.C)   ∀r.C'
//   ρ(≥n r.C) ≥n r.C', ≥(n+1) r.C up to the bound
//   ρ(C ⊓ D)  one operand refined
//   ρ(C ⊔ D)  one operand refined, or one operand dropped
//   ρ(⊥)      nothing
// Every refinement R' satisfies R(R') ⊆ R(C) under closed-world retrieval.
class RefinementOperator {
 public:
  RefinementOperator(const KnowledgeBase& kb, const ClassHierarchy& hierarchy, RefinementConfig config);

  const RefinementConfig& config() const noexcept { return config_; }

  // Normalized refinements of `e` with length ≤ config().max_length, without
  // `e` itself, duplicate-free and in canonical order.
  std::vector<ClassExpression> refine(const ClassExpression& e) const { return refine(e, config_.max_length); }
  std::vector<ClassExpression> refine(const ClassExpression& e, std::size_t max_length) const;

 private:
  // Raw (unfiltered, possibly duplicated) refinements within `budget`.
  void collect(const ClassExpression& e, std::size_t budget, std::vector<ClassExpression>& out) const;
  void collect_top(std::size_t budget, std::vector<ClassExpression>& out) const;
  void conjoin_with_top_refinements(const ClassExpression& e, std::size_t budget,
                                    std::vector<ClassExpression>& out) const;

  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  RefinementConfig config_;
};

// BFS over ρ from ⊤: true when an expression with the same retrieval as
// `target` is reached within `max_depth` refinement steps.
bool refinement_chain_exists(const RefinementOperator& rho, const InstanceRetriever& retriever,
                             const ClassExpression& target, std::size_t max_depth);

}  // namespace cel
