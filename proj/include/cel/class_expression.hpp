#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cel/iri.hpp"

namespace cel {

enum class ExprKind {
  kNamed,
  kTop,
  kBottom,
  kComplement,
  kIntersection,
  kUnion,
  kExistential,
  kUniversal,
  kMinCardinality,
};

// Immutable ALC + qualified-min-cardinality class expression. Copies share
// structure, so passing by value is cheap.
class ClassExpression {
 public:
  // ⊤.
  ClassExpression() : ClassExpression(top()) {}

  static ClassExpression named(Iri cls);
  static ClassExpression top();
  static ClassExpression bottom();
  static ClassExpression complement(ClassExpression operand);
  // Throw std::invalid_argument for fewer than two operands.
  static ClassExpression intersection(std::vector<ClassExpression> operands);
  static ClassExpression union_of(std::vector<ClassExpression> operands);
  static ClassExpression some(Iri role, ClassExpression filler);
  static ClassExpression only(Iri role, ClassExpression filler);
  // Throws std::invalid_argument for n == 0.
  static ClassExpression min(unsigned n, Iri role, ClassExpression filler);

  ExprKind kind() const noexcept { return node_->kind; }
  bool is(ExprKind k) const noexcept { return node_->kind == k; }
  bool is_top() const noexcept { return is(ExprKind::kTop); }
  bool is_bottom() const noexcept { return is(ExprKind::kBottom); }
  // Named class, Top or Bottom.
  bool is_atomic() const noexcept;
  bool is_restriction() const noexcept;

  // Class IRI for kNamed, role IRI for restrictions.
  const Iri& iri() const;
  const Iri& role() const { return iri(); }
  unsigned cardinality() const noexcept { return node_->cardinality; }
  // Operands of ⊓/⊔; the single operand of ¬; the filler of a restriction.
  std::span<const ClassExpression> operands() const noexcept { return node_->operands; }
  const ClassExpression& operand() const { return node_->operands.front(); }
  const ClassExpression& filler() const { return node_->operands.front(); }

  friend bool operator==(const ClassExpression& a, const ClassExpression& b) noexcept;

 private:
  struct Node {
    ExprKind kind;
    std::optional<Iri> iri;
    unsigned cardinality = 0;
    std::vector<ClassExpression> operands;
  };
  explicit ClassExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Symbol count: named classes, roles, ⊤/⊥, quantifiers, negations, and k-1
// connectives for a k-ary ⊓/⊔.
std::size_t expression_length(const ClassExpression& e);

// Negation normal form with flattened, deduplicated and canonically sorted
// ⊓/⊔ operands; ⊤/⊥ absorbed; single-operand junctions collapsed; ≥1 r.C
// rewritten to ∃r.C; ∃r.⊥ and ≥n r.⊥ folded to ⊥. ¬(≥n r.C) for n ≥ 2 has no NNF counterpart in the
// language and is kept as a complement.
ClassExpression normalize(const ClassExpression& e);

// Rendering with full IRIs; equal keys mean structurally identical expressions.
std::string canonical_key(const ClassExpression& e);

// Canonical operand order: (length, Manchester rendering, canonical key).
bool canonical_less(const ClassExpression& a, const ClassExpression& b);

}  // namespace cel

template <>
struct std::hash<cel::ClassExpression> {
  std::size_t operator()(const cel::ClassExpression& e) const { return std::hash<std::string>{}(cel::canonical_key(e)); }
};
