#include "cel/knowledge_base.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cel/error.hpp"

namespace cel {

namespace {

template <typename Map>
std::optional<std::uint32_t> find_id(const Map& map, const Iri& iri) {
  if (auto it = map.find(iri); it != map.end()) return it->second;
  return std::nullopt;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename Map>
void number(const std::vector<Iri>& list, Map& ids) {
  ids.reserve(list.size());
  for (std::uint32_t i = 0; i < list.size(); ++i) ids.emplace(list[i], i);
}

}  // namespace

std::optional<ClassIndex> KnowledgeBase::class_index(const Iri& iri) const { return find_id(class_ids_, iri); }
std::optional<RoleIndex> KnowledgeBase::role_index(const Iri& iri) const { return find_id(role_ids_, iri); }
std::optional<IndividualIndex> KnowledgeBase::individual_index(const Iri& iri) const {
  return find_id(individual_ids_, iri);
}

ClassIndex KnowledgeBase::require_class(const Iri& iri) const {
  if (auto id = class_index(iri)) return *id;
  throw UnknownIriError(iri.str(), "unknown class");
}
RoleIndex KnowledgeBase::require_role(const Iri& iri) const {
  if (auto id = role_index(iri)) return *id;
  throw UnknownIriError(iri.str(), "unknown object property");
}
IndividualIndex KnowledgeBase::require_individual(const Iri& iri) const {
  if (auto id = individual_index(iri)) return *id;
  throw UnknownIriError(iri.str(), "unknown individual");
}

std::vector<Iri> KnowledgeBase::classes_named(std::string_view name) const {
  std::vector<Iri> out;
  for (const auto& c : classes_) {
    if (c.local_name() == name) out.push_back(c);
  }
  return out;
}

std::vector<Iri> KnowledgeBase::roles_named(std::string_view name) const {
  std::vector<Iri> out;
  for (const auto& r : roles_) {
    if (r.local_name() == name) out.push_back(r);
  }
  return out;
}

std::string KnowledgeBase::dump() const {
  std::ostringstream out;
  for (const auto& c : classes_) out << "class " << c << '\n';
  for (const auto& r : roles_) out << "role " << r << '\n';
  for (const auto& i : individuals_) out << "individual " << i << '\n';
  for (const auto& [sub, sup] : subclass_axioms_) out << "subclass " << classes_[sub] << ' ' << classes_[sup] << '\n';
  for (ClassIndex c = 0; c < classes_.size(); ++c) {
    members_[c].for_each([&](std::size_t i) { out << "type " << individuals_[i] << ' ' << classes_[c] << '\n'; });
  }
  for (RoleIndex r = 0; r < roles_.size(); ++r) {
    for (IndividualIndex s = 0; s < individuals_.size(); ++s) {
      for (IndividualIndex o : successors_[r][s]) {
        out << "edge " << individuals_[s] << ' ' << roles_[r] << ' ' << individuals_[o] << '\n';
      }
    }
  }
  for (const auto& t : literal_assertions_) out << "literal " << t.subject << ' ' << t.predicate << ' ' << to_ntriples_term(t.object) << '\n';
  for (const auto& w : warnings_) out << "warning " << w << '\n';
  return out.str();
}

KnowledgeBase build_knowledge_base(const std::vector<Triple>& input) {
  KnowledgeBase kb;
  kb.triples_ = input;
  sort_unique(kb.triples_);

  const Iri rdf_type(vocab::kRdfType);
  const Iri subclass_of(vocab::kRdfsSubClassOf);
  const Iri owl_class(vocab::kOwlClass);
  const Iri owl_object_property(vocab::kOwlObjectProperty);
  const Iri owl_named_individual(vocab::kOwlNamedIndividual);

  // Pass 1: vocabulary.
  std::set<Iri> classes;
  std::set<Iri> roles;
  for (const auto& t : kb.triples_) {
    const auto* object = std::get_if<Iri>(&t.object);
    if (object == nullptr) continue;
    if (t.predicate == rdf_type && *object == owl_class) classes.insert(t.subject);
    if (t.predicate == rdf_type && *object == owl_object_property) roles.insert(t.subject);
    if (t.predicate == subclass_of) {
      classes.insert(t.subject);
      classes.insert(*object);
    }
  }
  for (const auto& r : roles) {
    if (classes.contains(r)) {
      throw ValidationError(r.str(), "IRI is used both as a class and as an object property");
    }
  }
  for (const auto& t : kb.triples_) {
    if (classes.contains(t.predicate)) {
      throw ValidationError(t.predicate.str(), "class IRI used as a predicate");
    }
  }

  // Pass 2: individuals.
  std::set<Iri> individuals;
  for (const auto& t : kb.triples_) {
    const auto* object = std::get_if<Iri>(&t.object);
    if (object == nullptr) continue;
    if (t.predicate == rdf_type && (*object == owl_named_individual || classes.contains(*object))) {
      individuals.insert(t.subject);
    } else if (roles.contains(t.predicate)) {
      individuals.insert(t.subject);
      individuals.insert(*object);
    }
  }

  kb.classes_.assign(classes.begin(), classes.end());
  kb.roles_.assign(roles.begin(), roles.end());
  kb.individuals_.assign(individuals.begin(), individuals.end());
  number(kb.classes_, kb.class_ids_);
  number(kb.roles_, kb.role_ids_);
  number(kb.individuals_, kb.individual_ids_);

  const std::size_t nc = kb.classes_.size();
  const std::size_t ni = kb.individuals_.size();
  kb.told_supers_.assign(nc, {});
  kb.told_subs_.assign(nc, {});
  kb.members_.assign(nc, IndividualSet(ni));
  kb.types_.assign(ni, {});
  kb.successors_.assign(kb.roles_.size(), std::vector<std::vector<IndividualIndex>>(ni));
  kb.predecessors_.assign(kb.roles_.size(), std::vector<std::vector<IndividualIndex>>(ni));

  // Pass 3: axioms and assertions.
  for (const auto& t : kb.triples_) {
    const auto* object = std::get_if<Iri>(&t.object);
    if (object == nullptr) {
      kb.literal_assertions_.push_back(t);
      continue;
    }
    if (t.predicate == rdf_type) {
      if (*object == owl_class || *object == owl_object_property || *object == owl_named_individual) continue;
      if (auto c = kb.class_index(*object)) {
        const IndividualIndex i = *kb.individual_index(t.subject);
        kb.members_[*c].set(i);
        kb.types_[i].push_back(*c);
        continue;
      }
    } else if (t.predicate == subclass_of) {
      const ClassIndex sub = kb.class_ids_.at(t.subject);
      const ClassIndex sup = kb.class_ids_.at(*object);
      kb.subclass_axioms_.emplace_back(sub, sup);
      continue;
    } else if (auto r = kb.role_index(t.predicate)) {
      const IndividualIndex s = *kb.individual_index(t.subject);
      const IndividualIndex o = *kb.individual_index(*object);
      kb.successors_[*r][s].push_back(o);
      kb.predecessors_[*r][o].push_back(s);
      continue;
    }
    std::string line = serialize_ntriples({t});
    line.pop_back();
    kb.warnings_.push_back("ignored triple: " + line);
  }

  // Triples are unique, so assertion lists are duplicate-free; sort for determinism.
  sort_unique(kb.subclass_axioms_);
  for (const auto& [sub, sup] : kb.subclass_axioms_) {
    kb.told_supers_[sub].push_back(sup);
    kb.told_subs_[sup].push_back(sub);
  }
  for (auto& v : kb.told_supers_) sort_unique(v);
  for (auto& v : kb.told_subs_) sort_unique(v);
  for (auto& v : kb.types_) {
    sort_unique(v);
    kb.class_assertion_count_ += v.size();
  }
  for (auto& per_role : kb.successors_) {
    for (auto& v : per_role) {
      sort_unique(v);
      kb.role_assertion_count_ += v.size();
    }
  }
  for (auto& per_role : kb.predecessors_) {
    for (auto& v : per_role) sort_unique(v);
  }
  return kb;
}

}  // namespace cel
