#include "cel/class_expression.hpp"

#include <algorithm>
#include <stdexcept>

#include "cel/syntax.hpp"

namespace cel {

ClassExpression ClassExpression::named(Iri cls) {
  return ClassExpression(std::make_shared<const Node>(Node{ExprKind::kNamed, cls, 0, {}}));
}

ClassExpression ClassExpression::top() {
  static const ClassExpression instance(std::make_shared<const Node>(Node{ExprKind::kTop, std::nullopt, 0, {}}));
  return instance;
}

ClassExpression ClassExpression::bottom() {
  static const ClassExpression instance(std::make_shared<const Node>(Node{ExprKind::kBottom, std::nullopt, 0, {}}));
  return instance;
}

ClassExpression ClassExpression::complement(ClassExpression operand) {
  return ClassExpression(
      std::make_shared<const Node>(Node{ExprKind::kComplement, std::nullopt, 0, {std::move(operand)}}));
}

ClassExpression ClassExpression::intersection(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw std::invalid_argument("intersection needs at least two operands");
  return ClassExpression(
      std::make_shared<const Node>(Node{ExprKind::kIntersection, std::nullopt, 0, std::move(operands)}));
}

ClassExpression ClassExpression::union_of(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw std::invalid_argument("union needs at least two operands");
  return ClassExpression(std::make_shared<const Node>(Node{ExprKind::kUnion, std::nullopt, 0, std::move(operands)}));
}

ClassExpression ClassExpression::some(Iri role, ClassExpression filler) {
  return ClassExpression(std::make_shared<const Node>(Node{ExprKind::kExistential, role, 0, {std::move(filler)}}));
}

ClassExpression ClassExpression::only(Iri role, ClassExpression filler) {
  return ClassExpression(std::make_shared<const Node>(Node{ExprKind::kUniversal, role, 0, {std::move(filler)}}));
}

ClassExpression ClassExpression::min(unsigned n, Iri role, ClassExpression filler) {
  if (n == 0) throw std::invalid_argument("min cardinality must be positive");
  return ClassExpression(std::make_shared<const Node>(Node{ExprKind::kMinCardinality, role, n, {std::move(filler)}}));
}

bool ClassExpression::is_atomic() const noexcept {
  return is(ExprKind::kNamed) || is(ExprKind::kTop) || is(ExprKind::kBottom);
}

bool ClassExpression::is_restriction() const noexcept {
  return is(ExprKind::kExistential) || is(ExprKind::kUniversal) || is(ExprKind::kMinCardinality);
}

const Iri& ClassExpression::iri() const {
  if (!node_->iri) throw std::logic_error("expression has no IRI");
  return *node_->iri;
}

bool operator==(const ClassExpression& a, const ClassExpression& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->iri != b.node_->iri || a.cardinality() != b.cardinality()) return false;
  const auto lhs = a.operands();
  const auto rhs = b.operands();
  return std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

std::size_t expression_length(const ClassExpression& e) {
  switch (e.kind()) {
    case ExprKind::kNamed:
    case ExprKind::kTop:
    case ExprKind::kBottom:
      return 1;
    case ExprKind::kComplement:
      return 1 + expression_length(e.operand());
    case ExprKind::kIntersection:
    case ExprKind::kUnion: {
      std::size_t n = e.operands().size() - 1;
      for (const auto& op : e.operands()) n += expression_length(op);
      return n;
    }
    case ExprKind::kExistential:
    case ExprKind::kUniversal:
    case ExprKind::kMinCardinality:
      return 2 + expression_length(e.filler());
  }
  return 0;
}

std::string canonical_key(const ClassExpression& e) { return render(e, Syntax::kManchester, IriStyle::kFull); }

namespace {

struct SortKey {
  std::size_t length;
  std::string manchester;
  std::string full;
  auto operator<=>(const SortKey&) const = default;
};

SortKey sort_key(const ClassExpression& e) {
  return {expression_length(e), render(e, Syntax::kManchester), canonical_key(e)};
}

ClassExpression negate(const ClassExpression& e);

// Restriction constructors folding ∃r.⊥ and ≥n r.⊥ to ⊥.
ClassExpression some_of(const Iri& role, ClassExpression filler) {
  if (filler.is_bottom()) return ClassExpression::bottom();
  return ClassExpression::some(role, std::move(filler));
}

ClassExpression min_of(unsigned n, const Iri& role, ClassExpression filler) {
  if (filler.is_bottom()) return ClassExpression::bottom();
  if (n == 1) return ClassExpression::some(role, std::move(filler));
  return ClassExpression::min(n, role, std::move(filler));
}

// Flattens, absorbs ⊤/⊥, dedupes and sorts already-normalized operands.
ClassExpression make_junction(ExprKind kind, std::vector<ClassExpression> operands) {
  const bool is_and = kind == ExprKind::kIntersection;
  std::vector<ClassExpression> flat;
  for (auto& op : operands) {
    if (op.kind() == kind) {
      flat.insert(flat.end(), op.operands().begin(), op.operands().end());
    } else if ((is_and && op.is_bottom()) || (!is_and && op.is_top())) {
      return op;
    } else if ((is_and && op.is_top()) || (!is_and && op.is_bottom())) {
      continue;
    } else {
      flat.push_back(std::move(op));
    }
  }
  std::vector<std::pair<SortKey, ClassExpression>> keyed;
  keyed.reserve(flat.size());
  for (auto& op : flat) keyed.emplace_back(sort_key(op), std::move(op));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  if (keyed.empty()) return is_and ? ClassExpression::top() : ClassExpression::bottom();
  if (keyed.size() == 1) return keyed.front().second;
  std::vector<ClassExpression> sorted;
  sorted.reserve(keyed.size());
  for (auto& [key, op] : keyed) sorted.push_back(std::move(op));
  return is_and ? ClassExpression::intersection(std::move(sorted)) : ClassExpression::union_of(std::move(sorted));
}

// NNF of ¬e, where e is arbitrary.
ClassExpression negate(const ClassExpression& e) {
  switch (e.kind()) {
    case ExprKind::kNamed:
      return ClassExpression::complement(e);
    case ExprKind::kTop:
      return ClassExpression::bottom();
    case ExprKind::kBottom:
      return ClassExpression::top();
    case ExprKind::kComplement:
      return normalize(e.operand());
    case ExprKind::kIntersection:
    case ExprKind::kUnion: {
      std::vector<ClassExpression> ops;
      for (const auto& op : e.operands()) ops.push_back(negate(op));
      return make_junction(e.is(ExprKind::kIntersection) ? ExprKind::kUnion : ExprKind::kIntersection, std::move(ops));
    }
    case ExprKind::kExistential:
      return ClassExpression::only(e.role(), negate(e.filler()));
    case ExprKind::kUniversal:
      return some_of(e.role(), negate(e.filler()));
    case ExprKind::kMinCardinality: {
      if (e.cardinality() == 1) return ClassExpression::only(e.role(), negate(e.filler()));
      const ClassExpression inner = min_of(e.cardinality(), e.role(), normalize(e.filler()));
      return inner.is_bottom() ? ClassExpression::top() : ClassExpression::complement(inner);
    }
  }
  return e;
}

}  // namespace

ClassExpression normalize(const ClassExpression& e) {
  switch (e.kind()) {
    case ExprKind::kNamed:
    case ExprKind::kTop:
    case ExprKind::kBottom:
      return e;
    case ExprKind::kComplement:
      return negate(e.operand());
    case ExprKind::kIntersection:
    case ExprKind::kUnion: {
      std::vector<ClassExpression> ops;
      for (const auto& op : e.operands()) ops.push_back(normalize(op));
      return make_junction(e.kind(), std::move(ops));
    }
    case ExprKind::kExistential:
      return some_of(e.role(), normalize(e.filler()));
    case ExprKind::kUniversal:
      return ClassExpression::only(e.role(), normalize(e.filler()));
    case ExprKind::kMinCardinality:
      return min_of(e.cardinality(), e.role(), normalize(e.filler()));
  }
  return e;
}

bool canonical_less(const ClassExpression& a, const ClassExpression& b) { return sort_key(a) < sort_key(b); }

}  // namespace cel
