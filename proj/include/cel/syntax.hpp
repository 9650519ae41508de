#pragma once

#include <string>
#include <string_view>

#include "cel/class_expression.hpp"

namespace cel {

class KnowledgeBase;

enum class Syntax { kDL, kManchester };

enum class IriStyle {
  kLocalName,  // local names; <full IRI> when a name is not a plain token
  kFull,       // always <full IRI>
};

// Deterministic, parenthesized-unambiguous rendering.
//   DL:         Female ⊓ (∃ married.⊤)
//   Manchester: Female and (married some Thing)
std::string render(const ClassExpression& e, Syntax syntax, IriStyle style = IriStyle::kLocalName);

// Parses Manchester syntax over the vocabulary of `kb` and returns the
// normalized expression. Names are local names or <full IRIs>. Precedence:
// not > some/only/min > and > or. Throws ParseError with the column of the
// offending token, or UnknownIriError naming an unresolved symbol.
ClassExpression parse_expression(std::string_view text, const KnowledgeBase& kb);

}  // namespace cel
