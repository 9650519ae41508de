#pragma once

#include <cstddef>
#include <string>

#include "cel/class_expression.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"

namespace cel {

struct CompiledQuery {
  std::string query_text;
  std::string root_variable = "x";
  // Number of fresh variable indices consumed.
  std::size_t fresh_variable_counter = 0;
};

// Hierarchy information used to expand named classes into VALUES lists.
struct HierarchyView {
  const KnowledgeBase& kb;
  const ClassHierarchy& hierarchy;
};

// Structural mapping of a class expression to a SPARQL 1.1 SELECT DISTINCT
// query over ?x:
//   A        ?v rdf:type <A> .   (VALUES over A and its subclasses when expanding)
//   ⊤        ?v ?pN ?oN .
//   ⊥        FILTER(false)
//   C ⊓ D    P(C) P(D)
//   C ⊔ D    { P(C) } UNION { P(D) }
//   ¬C       ?v ?pN ?oN . FILTER NOT EXISTS { P(C) }
//   ∃r.C     ?v <r> ?sN . P(C)[?sN]
//   ∀r.C     ?v ?pN ?oN . FILTER NOT EXISTS { ?v <r> ?sM . FILTER NOT EXISTS { P(C)[?sM] } }
//   ≥n r.C   { SELECT ?v WHERE { ?v <r> ?sN . P(C)[?sN] } GROUP BY ?v HAVING(COUNT(DISTINCT ?sN) >= n) }
// The universe for ¬ and ∀ is every subject of some triple. Variable numbering
// is deterministic. Expansion requires `hierarchy`.
CompiledQuery compile(const ClassExpression& e, const HierarchyView* hierarchy, bool expand_hierarchy);

}  // namespace cel
