#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cel/individual_set.hpp"
#include "cel/iri.hpp"
#include "cel/ntriples.hpp"

namespace cel {

using ClassIndex = std::uint32_t;
using RoleIndex = std::uint32_t;
using IndividualIndex = std::uint32_t;

// Indexed TBox + ABox over a fixed individual universe. Vocabulary lists are
// sorted by IRI, and every index refers to positions in those lists, so two
// knowledge bases built from permutations of the same triples are identical.
// Immutable after construction.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  const std::vector<Iri>& classes() const noexcept { return classes_; }
  const std::vector<Iri>& roles() const noexcept { return roles_; }
  const std::vector<Iri>& individuals() const noexcept { return individuals_; }
  std::size_t universe_size() const noexcept { return individuals_.size(); }

  std::optional<ClassIndex> class_index(const Iri& iri) const;
  std::optional<RoleIndex> role_index(const Iri& iri) const;
  std::optional<IndividualIndex> individual_index(const Iri& iri) const;

  // Lookup throwing UnknownIriError.
  ClassIndex require_class(const Iri& iri) const;
  RoleIndex require_role(const Iri& iri) const;
  IndividualIndex require_individual(const Iri& iri) const;

  // Classes / roles whose local name equals `name`.
  std::vector<Iri> classes_named(std::string_view name) const;
  std::vector<Iri> roles_named(std::string_view name) const;

  // Asserted SubClassOf(sub, sup) pairs, sorted and unique.
  const std::vector<std::pair<ClassIndex, ClassIndex>>& subclass_axioms() const noexcept { return subclass_axioms_; }
  std::span<const ClassIndex> asserted_superclasses(ClassIndex c) const { return told_supers_[c]; }
  std::span<const ClassIndex> asserted_subclasses(ClassIndex c) const { return told_subs_[c]; }

  // Individuals asserted directly into `c` (no hierarchy reasoning).
  const IndividualSet& asserted_members(ClassIndex c) const { return members_[c]; }
  std::span<const ClassIndex> asserted_types(IndividualIndex i) const { return types_[i]; }

  std::span<const IndividualIndex> successors(RoleIndex r, IndividualIndex i) const { return successors_[r][i]; }
  std::span<const IndividualIndex> predecessors(RoleIndex r, IndividualIndex i) const { return predecessors_[r][i]; }
  std::size_t class_assertion_count() const noexcept { return class_assertion_count_; }
  std::size_t role_assertion_count() const noexcept { return role_assertion_count_; }

  // Source triples, sorted and deduplicated.
  const std::vector<Triple>& triples() const noexcept { return triples_; }
  // Triples with a literal object; stored but not used for learning.
  const std::vector<Triple>& literal_assertions() const noexcept { return literal_assertions_; }

  // Triples that matched no ingestion rule, one message each.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Canonical textual listing of every index, for comparing knowledge bases.
  std::string dump() const;

 private:
  friend KnowledgeBase build_knowledge_base(const std::vector<Triple>& triples);

  std::vector<Iri> classes_;
  std::vector<Iri> roles_;
  std::vector<Iri> individuals_;
  std::unordered_map<Iri, ClassIndex> class_ids_;
  std::unordered_map<Iri, RoleIndex> role_ids_;
  std::unordered_map<Iri, IndividualIndex> individual_ids_;

  std::vector<std::pair<ClassIndex, ClassIndex>> subclass_axioms_;
  std::vector<std::vector<ClassIndex>> told_supers_;
  std::vector<std::vector<ClassIndex>> told_subs_;

  std::vector<IndividualSet> members_;
  std::vector<std::vector<ClassIndex>> types_;
  std::vector<std::vector<std::vector<IndividualIndex>>> successors_;
  std::vector<std::vector<std::vector<IndividualIndex>>> predecessors_;
  std::size_t class_assertion_count_ = 0;
  std::size_t role_assertion_count_ = 0;

  std::vector<Triple> triples_;
  std::vector<Triple> literal_assertions_;
  std::vector<std::string> warnings_;
};

// Ingestion rules:
//  - x rdf:type owl:Class / owl:ObjectProperty declares a class / role
//  - rdfs:subClassOf between IRIs is a SubClassOf axiom (both sides declared)
//  - x rdf:type owl:NamedIndividual declares an individual
//  - x rdf:type C with C a declared class is a class assertion
//  - x r y with r a declared role is a role assertion
// Anything else is recorded as a warning. Throws ValidationError when an IRI
// is declared both as a class and as an object property.
KnowledgeBase build_knowledge_base(const std::vector<Triple>& triples);

}  // namespace cel
