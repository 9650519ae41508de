#pragma once

#include <span>
#include <string>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/individual_set.hpp"
#include "cel/knowledge_base.hpp"

namespace cel {

// Reflexive-transitive closure of the asserted SubClassOf axioms, with ⊤ as
// the implicit root. Classes on a subclass cycle form an equivalence group:
// they share closure rows, and direct relations are computed between groups.
class ClassHierarchy {
 public:
  ClassHierarchy() = default;

  std::size_t class_count() const noexcept { return supers_.size(); }

  // Closure rows over class indices, reflexive.
  const DenseBitset& superclass_row(ClassIndex c) const { return supers_[c]; }
  const DenseBitset& subclass_row(ClassIndex c) const { return subs_[c]; }
  bool is_subclass_of(ClassIndex sub, ClassIndex sup) const { return supers_[sub].test(sup); }

  // Transitive reduction. An empty direct-superclass list means ⊤.
  std::span<const ClassIndex> direct_superclasses(ClassIndex c) const { return direct_supers_[c]; }
  std::span<const ClassIndex> direct_subclasses(ClassIndex c) const { return direct_subs_[c]; }
  std::span<const ClassIndex> top_children() const { return top_children_; }
  // Classes without strict subclasses.
  std::span<const ClassIndex> leaves() const { return leaves_; }

  std::span<const ClassIndex> equivalents(ClassIndex c) const { return groups_[group_of_[c]]; }

  // Expression-level views; `e` must be a named class or ⊤. The results
  // include `e` itself and, for superclasses, ⊤. Sorted canonically.
  std::vector<ClassExpression> superclasses(const ClassExpression& e, const KnowledgeBase& kb) const;
  std::vector<ClassExpression> subclasses(const ClassExpression& e, const KnowledgeBase& kb) const;

  // One message per collapsed cycle.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend ClassHierarchy classify(const KnowledgeBase& kb);

  std::vector<DenseBitset> supers_;
  std::vector<DenseBitset> subs_;
  std::vector<std::vector<ClassIndex>> direct_supers_;
  std::vector<std::vector<ClassIndex>> direct_subs_;
  std::vector<ClassIndex> top_children_;
  std::vector<ClassIndex> leaves_;
  std::vector<std::vector<ClassIndex>> groups_;
  std::vector<std::size_t> group_of_;
  std::vector<std::string> warnings_;
};

ClassHierarchy classify(const KnowledgeBase& kb);

}  // namespace cel
