#pragma once

#include "cel/class_expression.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/individual_set.hpp"
#include "cel/knowledge_base.hpp"

namespace cel {

// Anything that can compute R(C) as a set over the knowledge-base universe.
// Implementations must be safe for concurrent calls.
class InstanceRetriever {
 public:
  virtual ~InstanceRetriever() = default;
  virtual IndividualSet retrieve(const ClassExpression& e) const = 0;
};

// Structural closed-world reasoner over asserted facts:
//   R(A)       individuals asserted into A or any subclass of A
//   R(¬C)      Δ \ R(C)
//   R(∃r.C)    x with some asserted r(x,y), y ∈ R(C)
//   R(∀r.C)    x whose asserted r-successors are all in R(C), vacuously true
//   R(≥n r.C)  x with at least n asserted r-successors in R(C)
// Holds references to `kb` and `hierarchy`; both must outlive the reasoner.
class Reasoner : public InstanceRetriever {
 public:
  Reasoner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy);

  // Compositional retrieval with OpenMP-parallel restriction kernels.
  IndividualSet instances(const ClassExpression& e) const;
  // Same contract, single-threaded reference implementation.
  IndividualSet instances_serial(const ClassExpression& e) const;

  // Point query by recursive model checking; never materializes R(e).
  bool check(const Iri& individual, const ClassExpression& e) const;
  bool check(IndividualIndex individual, const ClassExpression& e) const;

  IndividualSet retrieve(const ClassExpression& e) const override { return instances(e); }

  const KnowledgeBase& knowledge_base() const noexcept { return kb_; }
  const ClassHierarchy& hierarchy() const noexcept { return hierarchy_; }

  // Below this many universe words the kernels run serially.
  static constexpr std::size_t kParallelWordThreshold = 16;

 private:
  template <bool Parallel>
  IndividualSet retrieve_impl(const ClassExpression& e) const;

  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  // R(A) per named class, including subclass members.
  std::vector<IndividualSet> class_members_;
};

}  // namespace cel
