#include "cel/reasoner.hpp"

#include <stdexcept>

#include "cel/error.hpp"

namespace cel {

namespace {

enum class Quantifier { kSome, kOnly, kAtLeast };

// Per-individual test of one restriction against the filler set.
inline bool holds(Quantifier q, std::span<const IndividualIndex> successors, const IndividualSet& filler,
                  unsigned n) {
  switch (q) {
    case Quantifier::kSome:
      for (IndividualIndex y : successors) {
        if (filler.test(y)) return true;
      }
      return false;
    case Quantifier::kOnly:
      for (IndividualIndex y : successors) {
        if (!filler.test(y)) return false;
      }
      return true;
    case Quantifier::kAtLeast: {
      unsigned count = 0;
      for (IndividualIndex y : successors) {
        if (filler.test(y) && ++count >= n) return true;
      }
      return false;
    }
  }
  return false;
}

template <bool Parallel>
IndividualSet restriction_kernel(const KnowledgeBase& kb, RoleIndex role, Quantifier q, unsigned n,
                                 const IndividualSet& filler) {
  const std::size_t universe = kb.universe_size();
  IndividualSet out(universe);
  const auto words = static_cast<std::ptrdiff_t>(out.word_count());
  // Each iteration owns one output word, so writes never race.
#pragma omp parallel for schedule(static) if (Parallel && words >= static_cast<std::ptrdiff_t>(Reasoner::kParallelWordThreshold))
  for (std::ptrdiff_t w = 0; w < words; ++w) {
    DenseBitset::Word bits = 0;
    const std::size_t base = static_cast<std::size_t>(w) * DenseBitset::kWordBits;
    const std::size_t end = std::min(universe, base + DenseBitset::kWordBits);
    for (std::size_t x = base; x < end; ++x) {
      if (holds(q, kb.successors(role, static_cast<IndividualIndex>(x)), filler, n)) {
        bits |= DenseBitset::Word{1} << (x - base);
      }
    }
    out.word(static_cast<std::size_t>(w)) = bits;
  }
  return out;
}

}  // namespace

Reasoner::Reasoner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy) : kb_(kb), hierarchy_(hierarchy) {
  if (hierarchy.class_count() != kb.classes().size()) {
    throw std::invalid_argument("class hierarchy does not belong to this knowledge base");
  }
  class_members_.assign(kb.classes().size(), IndividualSet(kb.universe_size()));
  for (ClassIndex c = 0; c < kb.classes().size(); ++c) {
    hierarchy.subclass_row(c).for_each([&](std::size_t sub) { class_members_[c] |= kb.asserted_members(sub); });
  }
}

template <bool Parallel>
IndividualSet Reasoner::retrieve_impl(const ClassExpression& e) const {
  const std::size_t universe = kb_.universe_size();
  switch (e.kind()) {
    case ExprKind::kNamed:
      return class_members_[kb_.require_class(e.iri())];
    case ExprKind::kTop:
      return IndividualSet(universe, true);
    case ExprKind::kBottom:
      return IndividualSet(universe);
    case ExprKind::kComplement:
      return retrieve_impl<Parallel>(e.operand()).flip();
    case ExprKind::kIntersection: {
      IndividualSet acc = retrieve_impl<Parallel>(e.operands()[0]);
      for (std::size_t i = 1; i < e.operands().size(); ++i) acc &= retrieve_impl<Parallel>(e.operands()[i]);
      return acc;
    }
    case ExprKind::kUnion: {
      IndividualSet acc = retrieve_impl<Parallel>(e.operands()[0]);
      for (std::size_t i = 1; i < e.operands().size(); ++i) acc |= retrieve_impl<Parallel>(e.operands()[i]);
      return acc;
    }
    case ExprKind::kExistential:
      return restriction_kernel<Parallel>(kb_, kb_.require_role(e.role()), Quantifier::kSome, 1,
                                          retrieve_impl<Parallel>(e.filler()));
    case ExprKind::kUniversal:
      return restriction_kernel<Parallel>(kb_, kb_.require_role(e.role()), Quantifier::kOnly, 0,
                                          retrieve_impl<Parallel>(e.filler()));
    case ExprKind::kMinCardinality:
      return restriction_kernel<Parallel>(kb_, kb_.require_role(e.role()), Quantifier::kAtLeast, e.cardinality(),
                                          retrieve_impl<Parallel>(e.filler()));
  }
  return IndividualSet(universe);
}

IndividualSet Reasoner::instances(const ClassExpression& e) const { return retrieve_impl<true>(e); }

IndividualSet Reasoner::instances_serial(const ClassExpression& e) const { return retrieve_impl<false>(e); }

bool Reasoner::check(const Iri& individual, const ClassExpression& e) const {
  return check(kb_.require_individual(individual), e);
}

bool Reasoner::check(IndividualIndex x, const ClassExpression& e) const {
  if (x >= kb_.universe_size()) throw UnknownIriError(std::to_string(x), "individual index out of range");
  switch (e.kind()) {
    case ExprKind::kNamed: {
      const ClassIndex target = kb_.require_class(e.iri());
      for (ClassIndex asserted : kb_.asserted_types(x)) {
        if (hierarchy_.is_subclass_of(asserted, target)) return true;
      }
      return false;
    }
    case ExprKind::kTop:
      return true;
    case ExprKind::kBottom:
      return false;
    case ExprKind::kComplement:
      return !check(x, e.operand());
    case ExprKind::kIntersection:
      for (const auto& op : e.operands()) {
        if (!check(x, op)) return false;
      }
      return true;
    case ExprKind::kUnion:
      for (const auto& op : e.operands()) {
        if (check(x, op)) return true;
      }
      return false;
    case ExprKind::kExistential:
    case ExprKind::kUniversal:
    case ExprKind::kMinCardinality: {
      const RoleIndex r = kb_.require_role(e.role());
      unsigned matching = 0;
      const auto successors = kb_.successors(r, x);
      for (IndividualIndex y : successors) {
        if (check(y, e.filler())) ++matching;
      }
      if (e.is(ExprKind::kExistential)) return matching >= 1;
      if (e.is(ExprKind::kUniversal)) return matching == successors.size();
      return matching >= e.cardinality();
    }
  }
  return false;
}

}  // namespace cel
