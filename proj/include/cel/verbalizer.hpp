#pragma once

#include <string>
#include <unordered_map>

#include "cel/class_expression.hpp"
#include "cel/iri.hpp"

namespace cel {

class KnowledgeBase;

// Human labels for classes and roles. IRIs without an explicit label fall
// back to their local name split at case changes and lowercased.
class LabelMap {
 public:
  LabelMap() = default;
  // Uses rdfs:label literals from the KB when present.
  explicit LabelMap(const KnowledgeBase& kb);

  void set(const Iri& iri, std::string label);
  std::string label(const Iri& iri) const;

 private:
  std::unordered_map<Iri, std::string> labels_;
};

// "PersonWithASibling" -> "person with a sibling", "has_child" -> "has child".
std::string default_label(const Iri& iri);

// Template-based English rendering, e.g. Female ⊓ ∃married.⊤ becomes
// "a female that is married to something".
std::string verbalize(const ClassExpression& e, const LabelMap& labels);

}  // namespace cel
