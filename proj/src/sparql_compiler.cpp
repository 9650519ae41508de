#include "cel/sparql_compiler.hpp"

#include <stdexcept>

namespace cel {

namespace {

class QueryWriter {
 public:
  QueryWriter(const HierarchyView* hierarchy, bool expand) : hierarchy_(hierarchy), expand_(expand) {
    if (expand && hierarchy == nullptr) throw std::invalid_argument("hierarchy expansion needs a class hierarchy");
  }

  std::size_t counter() const noexcept { return counter_; }

  std::string pattern(const ClassExpression& e, const std::string& v) {
    switch (e.kind()) {
      case ExprKind::kNamed:
        return named(e.iri(), v);
      case ExprKind::kTop:
        return universe(v);
      case ExprKind::kBottom:
        return "FILTER(false) ";
      case ExprKind::kComplement: {
        std::string out = universe(v);
        return out + "FILTER NOT EXISTS { " + pattern(e.operand(), v) + "} ";
      }
      case ExprKind::kIntersection: {
        std::string out;
        for (const auto& op : e.operands()) out += pattern(op, v);
        return out;
      }
      case ExprKind::kUnion: {
        std::string out;
        for (const auto& op : e.operands()) {
          if (!out.empty()) out += "UNION ";
          out += "{ " + pattern(op, v) + "} ";
        }
        return out;
      }
      case ExprKind::kExistential: {
        const std::string w = fresh("s");
        std::string out = v + " <" + e.role().str() + "> " + w + " . ";
        return out + pattern(e.filler(), w);
      }
      case ExprKind::kUniversal: {
        std::string out = universe(v);
        const std::string w = fresh("s");
        out += "FILTER NOT EXISTS { " + v + " <" + e.role().str() + "> " + w + " . ";
        // ∀r.⊥: the inner NOT EXISTS { FILTER(false) } always holds.
        if (!e.filler().is_bottom()) out += "FILTER NOT EXISTS { " + pattern(e.filler(), w) + "} ";
        return out + "} ";
      }
      case ExprKind::kMinCardinality: {
        const std::string w = fresh("s");
        std::string out = "{ SELECT " + v + " WHERE { " + v + " <" + e.role().str() + "> " + w + " . ";
        out += pattern(e.filler(), w);
        out += "} GROUP BY " + v + " HAVING(COUNT(DISTINCT " + w + ") >= " + std::to_string(e.cardinality()) + ") } ";
        return out;
      }
    }
    return {};
  }

 private:
  std::string fresh(const char* prefix) { return "?" + std::string(prefix) + std::to_string(counter_++); }

  std::string universe(const std::string& v) {
    const std::string n = std::to_string(counter_++);
    return v + " ?p" + n + " ?o" + n + " . ";
  }

  std::string named(const Iri& cls, const std::string& v) {
    if (expand_) {
      const ClassIndex c = hierarchy_->kb.require_class(cls);
      const DenseBitset& subs = hierarchy_->hierarchy.subclass_row(c);
      if (subs.count() > 1) {
        const std::string var = fresh("c");
        std::string out = v + " rdf:type " + var + " . VALUES " + var + " {";
        out += " <" + cls.str() + ">";
        subs.for_each([&](std::size_t s) {
          if (s != c) out += " <" + hierarchy_->kb.classes()[s].str() + ">";
        });
        return out + " } ";
      }
    }
    return v + " rdf:type <" + cls.str() + "> . ";
  }

  const HierarchyView* hierarchy_;
  bool expand_;
  std::size_t counter_ = 0;
};

}  // namespace

CompiledQuery compile(const ClassExpression& e, const HierarchyView* hierarchy, bool expand_hierarchy) {
  QueryWriter writer(hierarchy, expand_hierarchy);
  CompiledQuery q;
  const std::string body = writer.pattern(e, "?" + q.root_variable);
  q.query_text = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\nSELECT DISTINCT ?" + q.root_variable +
                 " WHERE { " + body + "}";
  q.fresh_variable_counter = writer.counter();
  return q;
}

}  // namespace cel
