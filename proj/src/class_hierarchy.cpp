#include "cel/class_hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

namespace cel {

namespace {

// Iterative Tarjan over the told-superclass graph. Components come out in
// reverse topological order: a component is emitted after everything it
// points to, i.e. superclass groups before their subclasses.
std::vector<std::vector<ClassIndex>> strongly_connected(const KnowledgeBase& kb) {
  const std::size_t n = kb.classes().size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<ClassIndex> stack;
  std::vector<std::vector<ClassIndex>> components;
  std::size_t counter = 0;

  struct Frame {
    ClassIndex node;
    std::size_t edge;
  };
  for (ClassIndex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto edges = kb.asserted_superclasses(f.node);
      if (f.edge < edges.size()) {
        const ClassIndex next = edges[f.edge++];
        if (index[next] == kUnvisited) {
          index[next] = low[next] = counter++;
          stack.push_back(next);
          on_stack[next] = true;
          call.push_back({next, 0});
        } else if (on_stack[next]) {
          low[f.node] = std::min(low[f.node], index[next]);
        }
        continue;
      }
      const ClassIndex node = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[node]);
      if (low[node] == index[node]) {
        std::vector<ClassIndex> component;
        ClassIndex member;
        do {
          member = stack.back();
          stack.pop_back();
          on_stack[member] = false;
          component.push_back(member);
        } while (member != node);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

}  // namespace

ClassHierarchy classify(const KnowledgeBase& kb) {
  ClassHierarchy h;
  const std::size_t n = kb.classes().size();
  h.groups_ = strongly_connected(kb);
  h.group_of_.assign(n, 0);
  for (std::size_t g = 0; g < h.groups_.size(); ++g) {
    for (ClassIndex c : h.groups_[g]) h.group_of_[c] = g;
    if (h.groups_[g].size() > 1) {
      std::string names;
      for (ClassIndex c : h.groups_[g]) names += (names.empty() ? "" : ", ") + kb.classes()[c].str();
      h.warnings_.push_back("subclass cycle collapsed into equivalence group: " + names);
    }
  }

  // Closure over groups in topological order (supers first).
  const std::size_t ng = h.groups_.size();
  std::vector<DenseBitset> group_supers(ng, DenseBitset(n));
  std::vector<std::vector<std::size_t>> group_told(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    for (ClassIndex c : h.groups_[g]) {
      group_supers[g].set(c);
      for (ClassIndex sup : kb.asserted_superclasses(c)) {
        const std::size_t sg = h.group_of_[sup];
        if (sg != g) group_told[g].push_back(sg);
      }
    }
    std::sort(group_told[g].begin(), group_told[g].end());
    group_told[g].erase(std::unique(group_told[g].begin(), group_told[g].end()), group_told[g].end());
    for (std::size_t sg : group_told[g]) {
      if (sg >= g) throw std::logic_error("class hierarchy components out of order");
      group_supers[g] |= group_supers[sg];
    }
  }

  h.supers_.resize(n);
  h.subs_.assign(n, DenseBitset(n));
  for (ClassIndex c = 0; c < n; ++c) h.supers_[c] = group_supers[h.group_of_[c]];
  for (ClassIndex c = 0; c < n; ++c) {
    h.supers_[c].for_each([&](std::size_t sup) { h.subs_[sup].set(c); });
  }

  // Transitive reduction between groups: a told super group is direct unless
  // it is a strict superclass of another told super group.
  h.direct_supers_.assign(n, {});
  h.direct_subs_.assign(n, {});
  for (std::size_t g = 0; g < ng; ++g) {
    std::vector<ClassIndex> direct;
    for (std::size_t sg : group_told[g]) {
      const ClassIndex rep = h.groups_[sg].front();
      bool redundant = false;
      for (std::size_t other : group_told[g]) {
        if (other != sg && group_supers[other].test(rep)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) direct.insert(direct.end(), h.groups_[sg].begin(), h.groups_[sg].end());
    }
    std::sort(direct.begin(), direct.end());
    for (ClassIndex c : h.groups_[g]) {
      h.direct_supers_[c] = direct;
      for (ClassIndex sup : direct) h.direct_subs_[sup].push_back(c);
    }
  }
  for (ClassIndex c = 0; c < n; ++c) {
    std::sort(h.direct_subs_[c].begin(), h.direct_subs_[c].end());
    if (h.direct_supers_[c].empty()) h.top_children_.push_back(c);
    if (h.subs_[c].count() == h.groups_[h.group_of_[c]].size()) h.leaves_.push_back(c);
  }
  return h;
}

namespace {

std::vector<ClassExpression> sorted_expressions(const DenseBitset& row, const KnowledgeBase& kb, bool with_top) {
  std::vector<ClassExpression> out;
  row.for_each([&](std::size_t c) { out.push_back(ClassExpression::named(kb.classes()[c])); });
  if (with_top) out.push_back(ClassExpression::top());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

std::vector<ClassExpression> ClassHierarchy::superclasses(const ClassExpression& e, const KnowledgeBase& kb) const {
  if (e.is_top()) return {ClassExpression::top()};
  if (!e.is(ExprKind::kNamed)) throw std::invalid_argument("superclasses() needs a named class or Thing");
  return sorted_expressions(supers_[kb.require_class(e.iri())], kb, true);
}

std::vector<ClassExpression> ClassHierarchy::subclasses(const ClassExpression& e, const KnowledgeBase& kb) const {
  if (e.is_top()) {
    std::vector<ClassExpression> out = sorted_expressions(DenseBitset(kb.classes().size(), true), kb, true);
    return out;
  }
  if (!e.is(ExprKind::kNamed)) throw std::invalid_argument("subclasses() needs a named class or Thing");
  return sorted_expressions(subs_[kb.require_class(e.iri())], kb, false);
}

}  // namespace cel
