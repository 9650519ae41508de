#include "cel/refinement.hpp"

#include <algorithm>
#include <unordered_set>

#include "cel/reasoner.hpp"
#include "cel/syntax.hpp"

namespace cel {

namespace {

ClassExpression named(const KnowledgeBase& kb, ClassIndex c) { return ClassExpression::named(kb.classes()[c]); }

ClassExpression conjoin(const ClassExpression& a, const ClassExpression& b) {
  return ClassExpression::intersection({a, b});
}

ClassExpression rebuild_restriction(const ClassExpression& e, ClassExpression filler) {
  switch (e.kind()) {
    case ExprKind::kExistential:
      return ClassExpression::some(e.role(), std::move(filler));
    case ExprKind::kUniversal:
      return ClassExpression::only(e.role(), std::move(filler));
    default:
      return ClassExpression::min(e.cardinality(), e.role(), std::move(filler));
  }
}

}  // namespace

RefinementOperator::RefinementOperator(const KnowledgeBase& kb, const ClassHierarchy& hierarchy,
                                       RefinementConfig config)
    : kb_(kb), hierarchy_(hierarchy), config_(config) {
  if (config_.max_length < 1) throw std::invalid_argument("max_length must be at least 1");
}

void RefinementOperator::collect_top(std::size_t budget, std::vector<ClassExpression>& out) const {
  if (budget < 1) return;
  const auto roots = hierarchy_.top_children();
  for (ClassIndex c : roots) out.push_back(named(kb_, c));
  if (config_.use_negation && budget >= 2) {
    for (ClassIndex leaf : hierarchy_.leaves()) out.push_back(ClassExpression::complement(named(kb_, leaf)));
  }
  if (budget >= 3) {
    for (const Iri& role : kb_.roles()) {
      out.push_back(ClassExpression::some(role, ClassExpression::top()));
      if (config_.use_universal) out.push_back(ClassExpression::only(role, ClassExpression::top()));
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        out.push_back(ClassExpression::union_of({named(kb_, roots[i]), named(kb_, roots[j])}));
      }
    }
  }
}

void RefinementOperator::conjoin_with_top_refinements(const ClassExpression& e, std::size_t budget,
                                                      std::vector<ClassExpression>& out) const {
  const std::size_t used = expression_length(e) + 1;
  if (budget <= used) return;
  std::vector<ClassExpression> atoms;
  collect_top(budget - used, atoms);
  for (const auto& atom : atoms) out.push_back(conjoin(e, atom));
}

void RefinementOperator::collect(const ClassExpression& e, std::size_t budget,
                                 std::vector<ClassExpression>& out) const {
  switch (e.kind()) {
    case ExprKind::kTop:
      collect_top(budget, out);
      return;
    case ExprKind::kBottom:
      return;
    case ExprKind::kNamed: {
      const ClassIndex c = kb_.require_class(e.iri());
      for (ClassIndex sub : hierarchy_.direct_subclasses(c)) out.push_back(named(kb_, sub));
      conjoin_with_top_refinements(e, budget, out);
      return;
    }
    case ExprKind::kComplement: {
      if (e.operand().is(ExprKind::kNamed)) {
        const ClassIndex c = kb_.require_class(e.operand().iri());
        for (ClassIndex sup : hierarchy_.direct_superclasses(c)) {
          out.push_back(ClassExpression::complement(named(kb_, sup)));
        }
      }
      conjoin_with_top_refinements(e, budget, out);
      return;
    }
    case ExprKind::kExistential:
    case ExprKind::kUniversal:
    case ExprKind::kMinCardinality: {
      const std::size_t overhead = expression_length(e) - expression_length(e.filler());
      if (budget > overhead) {
        std::vector<ClassExpression> fillers;
        collect(e.filler(), budget - overhead, fillers);
        for (auto& f : fillers) out.push_back(rebuild_restriction(e, std::move(f)));
      }
      if (e.is(ExprKind::kExistential)) {
        if (config_.use_cardinality && config_.max_cardinality_bound >= 2) {
          out.push_back(ClassExpression::min(2, e.role(), e.filler()));
        }
        conjoin_with_top_refinements(e, budget, out);
      } else if (e.is(ExprKind::kMinCardinality) && e.cardinality() + 1 <= config_.max_cardinality_bound) {
        out.push_back(ClassExpression::min(e.cardinality() + 1, e.role(), e.filler()));
      }
      return;
    }
    case ExprKind::kIntersection:
    case ExprKind::kUnion: {
      const auto ops = e.operands();
      const std::size_t total = expression_length(e);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::size_t rest = total - expression_length(ops[i]);
        if (budget <= rest) continue;
        std::vector<ClassExpression> replacements;
        collect(ops[i], budget - rest, replacements);
        for (auto& r : replacements) {
          std::vector<ClassExpression> next(ops.begin(), ops.end());
          next[i] = std::move(r);
          out.push_back(e.is(ExprKind::kIntersection) ? ClassExpression::intersection(std::move(next))
                                                      : ClassExpression::union_of(std::move(next)));
        }
      }
      if (e.is(ExprKind::kUnion)) {
        for (std::size_t i = 0; i < ops.size(); ++i) {
          std::vector<ClassExpression> kept;
          for (std::size_t j = 0; j < ops.size(); ++j) {
            if (j != i) kept.push_back(ops[j]);
          }
          out.push_back(kept.size() == 1 ? kept.front() : ClassExpression::union_of(std::move(kept)));
        }
      }
      return;
    }
  }
}

std::vector<ClassExpression> RefinementOperator::refine(const ClassExpression& e, std::size_t max_length) const {
  std::vector<ClassExpression> raw;
  collect(e, max_length, raw);

  const std::string self = canonical_key(normalize(e));
  struct Keyed {
    std::size_t length;
    std::string manchester;
    std::string key;
    ClassExpression expr;
  };
  std::vector<Keyed> keyed;
  std::unordered_set<std::string> seen;
  for (const auto& candidate : raw) {
    ClassExpression n = normalize(candidate);
    const std::size_t length = expression_length(n);
    if (length > max_length) continue;
    std::string key = canonical_key(n);
    if (key == self || !seen.insert(key).second) continue;
    keyed.push_back({length, render(n, Syntax::kManchester), std::move(key), std::move(n)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.length, a.manchester, a.key) < std::tie(b.length, b.manchester, b.key);
  });
  std::vector<ClassExpression> result;
  result.reserve(keyed.size());
  for (auto& k : keyed) result.push_back(std::move(k.expr));
  return result;
}

bool refinement_chain_exists(const RefinementOperator& rho, const InstanceRetriever& retriever,
                             const ClassExpression& target, std::size_t max_depth) {
  const IndividualSet wanted = retriever.retrieve(target);
  std::vector<ClassExpression> frontier{ClassExpression::top()};
  std::unordered_set<std::string> visited{canonical_key(ClassExpression::top())};
  for (std::size_t depth = 0;; ++depth) {
    for (const auto& e : frontier) {
      if (retriever.retrieve(e) == wanted) return true;
    }
    if (depth == max_depth) return false;
    std::vector<ClassExpression> next;
    for (const auto& e : frontier) {
      for (auto& r : rho.refine(e)) {
        if (visited.insert(canonical_key(r)).second) next.push_back(std::move(r));
      }
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
}

}  // namespace cel
