#include "cel/verbalizer.hpp"

#include <cctype>

#include "cel/knowledge_base.hpp"

namespace cel {

std::string default_label(const Iri& iri) {
  const std::string name = iri.local_name().empty() ? iri.str() : std::string(iri.local_name());
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (c == '_' || c == '-') {
      if (!out.empty() && out.back() != ' ') out += ' ';
      continue;
    }
    if (std::isupper(c) && i > 0) {
      const auto prev = static_cast<unsigned char>(name[i - 1]);
      const bool next_lower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
      if (std::islower(prev) || std::isdigit(prev) || (std::isupper(prev) && next_lower)) {
        if (!out.empty() && out.back() != ' ') out += ' ';
      }
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

LabelMap::LabelMap(const KnowledgeBase& kb) {
  for (const auto& t : kb.literal_assertions()) {
    if (t.predicate.str() != vocab::kRdfsLabel) continue;
    const auto* literal = std::get_if<Literal>(&t.object);
    if (literal == nullptr) continue;
    const std::string& lexical = literal->lexical;
    const auto close = lexical.rfind('"');
    if (close == 0 || close == std::string::npos) continue;
    // Prefer untagged or English labels; keep the first one seen otherwise.
    const std::string suffix = lexical.substr(close + 1);
    const bool preferred = suffix.empty() || suffix == "@en" || suffix.rfind("^^", 0) == 0;
    if (preferred || !labels_.contains(t.subject)) labels_[t.subject] = lexical.substr(1, close - 1);
  }
}

void LabelMap::set(const Iri& iri, std::string label) { labels_[iri] = std::move(label); }

std::string LabelMap::label(const Iri& iri) const {
  if (auto it = labels_.find(iri); it != labels_.end()) return it->second;
  return default_label(iri);
}

namespace {

bool is_participle(const std::string& label) {
  return label.size() > 2 && label.compare(label.size() - 2, 2, "ed") == 0;
}

std::string verb(const std::string& label) {
  if (!label.empty() && label.back() == 's') return label;
  return label + "s";
}

class Verbalizer {
 public:
  explicit Verbalizer(const LabelMap& labels) : labels_(labels) {}

  std::string phrase(const ClassExpression& e) const {
    switch (e.kind()) {
      case ExprKind::kNamed:
        return "a " + labels_.label(e.iri());
      case ExprKind::kTop:
        return "anything";
      case ExprKind::kBottom:
        return "nothing";
      case ExprKind::kComplement:
        return "anything that is not " + phrase(e.operand());
      case ExprKind::kUnion: {
        std::string out;
        for (const auto& op : e.operands()) {
          if (!out.empty()) out += " or ";
          out += phrase(op);
        }
        return out;
      }
      case ExprKind::kIntersection:
        return conjunction(e.operands());
      case ExprKind::kExistential:
      case ExprKind::kUniversal:
      case ExprKind::kMinCardinality:
        return "anything that " + clause(e);
    }
    return "anything";
  }

 private:
  std::string conjunction(std::span<const ClassExpression> ops) const {
    std::size_t head = 0;
    while (head < ops.size() && ops[head].is_restriction()) ++head;
    std::string out = head < ops.size() ? phrase(ops[head]) : "anything";
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i == head) continue;
      out += ops[i].is_restriction() ? " that " + clause(ops[i]) : " that is also " + phrase(ops[i]);
    }
    return out;
  }

  std::string counted(const ClassExpression& filler) const {
    if (filler.is(ExprKind::kNamed)) return labels_.label(filler.iri());
    if (filler.is_top()) return "things";
    return phrase(filler);
  }

  std::string clause(const ClassExpression& e) const {
    const std::string r = labels_.label(e.role());
    const ClassExpression& filler = e.filler();
    const bool participle = is_participle(r);
    switch (e.kind()) {
      case ExprKind::kExistential:
        if (filler.is_top() || participle) {
          return "is " + r + " to " + (filler.is_top() ? std::string("something") : phrase(filler));
        }
        return verb(r) + " " + phrase(filler);
      case ExprKind::kUniversal:
        if (participle) return "is " + r + " only to " + phrase(filler);
        return verb(r) + " only " + phrase(filler);
      case ExprKind::kMinCardinality: {
        const std::string amount = "at least " + std::to_string(e.cardinality()) + " " + counted(filler);
        if (participle) return "is " + r + " to " + amount;
        return verb(r) + " " + amount;
      }
      default:
        return "is " + phrase(e);
    }
  }

  const LabelMap& labels_;
};

}  // namespace

std::string verbalize(const ClassExpression& e, const LabelMap& labels) { return Verbalizer(labels).phrase(e); }

}  // namespace cel
