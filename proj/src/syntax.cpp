#include "cel/syntax.hpp"

#include <cctype>
#include <charconv>

#include "cel/error.hpp"
#include "cel/knowledge_base.hpp"

namespace cel {

namespace {

bool is_keyword(std::string_view s) {
  return s == "and" || s == "or" || s == "not" || s == "some" || s == "only" || s == "min" || s == "Thing" ||
         s == "Nothing";
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

bool is_plain_name(std::string_view s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  for (char c : s) {
    if (!is_name_char(c)) return false;
  }
  return !is_keyword(s);
}

std::string name_of(const Iri& iri, IriStyle style) {
  if (style == IriStyle::kLocalName && is_plain_name(iri.local_name())) return std::string(iri.local_name());
  return "<" + iri.str() + ">";
}

// Operands that never need parentheses inside a junction.
bool is_simple(const ClassExpression& e) {
  return e.is_atomic() || (e.is(ExprKind::kComplement) && e.operand().is_atomic());
}

class Renderer {
 public:
  Renderer(Syntax syntax, IriStyle style) : dl_(syntax == Syntax::kDL), style_(style) {}

  std::string operator()(const ClassExpression& e) const {
    switch (e.kind()) {
      case ExprKind::kNamed:
        return name_of(e.iri(), style_);
      case ExprKind::kTop:
        return dl_ ? "⊤" : "Thing";
      case ExprKind::kBottom:
        return dl_ ? "⊥" : "Nothing";
      case ExprKind::kComplement:
        return (dl_ ? "¬" : "not ") + wrap(e.operand(), e.operand().is_atomic());
      case ExprKind::kIntersection:
      case ExprKind::kUnion: {
        const char* sep = e.is(ExprKind::kIntersection) ? (dl_ ? " ⊓ " : " and ") : (dl_ ? " ⊔ " : " or ");
        std::string out;
        for (const auto& op : e.operands()) {
          if (!out.empty()) out += sep;
          out += wrap(op, is_simple(op));
        }
        return out;
      }
      case ExprKind::kExistential:
        return restriction(e, dl_ ? "∃ " : " some ");
      case ExprKind::kUniversal:
        return restriction(e, dl_ ? "∀ " : " only ");
      case ExprKind::kMinCardinality: {
        const std::string n = std::to_string(e.cardinality());
        return restriction(e, dl_ ? "≥ " + n + " " : " min " + n + " ");
      }
    }
    return {};
  }

 private:
  std::string wrap(const ClassExpression& e, bool bare) const { return bare ? (*this)(e) : "(" + (*this)(e) + ")"; }

  std::string restriction(const ClassExpression& e, const std::string& quantifier) const {
    const std::string role = name_of(e.role(), style_);
    const std::string filler = wrap(e.filler(), e.filler().is_atomic());
    if (dl_) return quantifier + role + "." + filler;
    return role + quantifier + filler;
  }

  bool dl_;
  IriStyle style_;
};

// ---------------------------------------------------------------------------

enum class Tok { kName, kIri, kNumber, kLParen, kRParen, kEnd };

struct Token {
  Tok type;
  std::string text;
  std::size_t column;
};

class ManchesterParser {
 public:
  ManchesterParser(std::string_view text, const KnowledgeBase& kb) : text_(text), kb_(kb) { advance(); }

  ClassExpression parse() {
    ClassExpression e = parse_union();
    if (tok_.type != Tok::kEnd) fail("unexpected '" + tok_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, tok_.column); }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t column = pos_ + 1;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::kEnd, "end of input", column};
      return;
    }
    const char c = text_[pos_];
    if (c == '(' || c == ')') {
      ++pos_;
      tok_ = {c == '(' ? Tok::kLParen : Tok::kRParen, std::string(1, c), column};
    } else if (c == '<') {
      const std::size_t close = text_.find('>', pos_);
      if (close == std::string_view::npos) throw ParseError("unterminated IRI", 1, column);
      tok_ = {Tok::kIri, std::string(text_.substr(pos_ + 1, close - pos_ - 1)), column};
      pos_ = close + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_ = {Tok::kNumber, std::string(text_.substr(start, pos_ - start)), column};
    } else if (is_name_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
      tok_ = {Tok::kName, std::string(text_.substr(start, pos_ - start)), column};
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", 1, column);
    }
  }

  bool at_keyword(std::string_view kw) const { return tok_.type == Tok::kName && tok_.text == kw; }

  // A name or IRI token that is not a keyword.
  bool at_symbol() const { return tok_.type == Tok::kIri || (tok_.type == Tok::kName && !is_keyword(tok_.text)); }

  ClassExpression parse_union() {
    std::vector<ClassExpression> ops{parse_intersection()};
    while (at_keyword("or")) {
      advance();
      ops.push_back(parse_intersection());
    }
    return ops.size() == 1 ? ops.front() : ClassExpression::union_of(std::move(ops));
  }

  ClassExpression parse_intersection() {
    std::vector<ClassExpression> ops{parse_unary()};
    while (at_keyword("and")) {
      advance();
      ops.push_back(parse_unary());
    }
    return ops.size() == 1 ? ops.front() : ClassExpression::intersection(std::move(ops));
  }

  ClassExpression parse_unary() {
    if (at_keyword("not")) {
      advance();
      return ClassExpression::complement(parse_unary());
    }
    if (at_symbol()) {
      Token symbol = tok_;
      advance();
      if (at_keyword("some") || at_keyword("only") || at_keyword("min")) {
        const Iri role = resolve_role(symbol);
        const std::string quantifier = tok_.text;
        advance();
        unsigned n = 1;
        if (quantifier == "min") {
          if (tok_.type != Tok::kNumber) fail("expected cardinality after 'min'");
          auto [ptr, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), n);
          if (ec != std::errc() || n == 0) fail("cardinality must be a positive integer");
          advance();
        }
        ClassExpression filler = parse_unary();
        if (quantifier == "some") return ClassExpression::some(role, filler);
        if (quantifier == "only") return ClassExpression::only(role, filler);
        return ClassExpression::min(n, role, filler);
      }
      return ClassExpression::named(resolve_class(symbol));
    }
    return parse_primary();
  }

  ClassExpression parse_primary() {
    if (tok_.type == Tok::kLParen) {
      advance();
      ClassExpression inner = parse_union();
      if (tok_.type != Tok::kRParen) fail("expected ')'");
      advance();
      return inner;
    }
    if (at_keyword("Thing")) {
      advance();
      return ClassExpression::top();
    }
    if (at_keyword("Nothing")) {
      advance();
      return ClassExpression::bottom();
    }
    fail("expected class expression, found '" + tok_.text + "'");
  }

  Iri resolve_class(const Token& t) const {
    if (t.type == Tok::kIri) {
      if (!is_absolute_iri(t.text)) throw ParseError("not an absolute IRI: <" + t.text + ">", 1, t.column);
      const Iri iri(t.text);
      kb_.require_class(iri);
      return iri;
    }
    auto matches = kb_.classes_named(t.text);
    if (matches.empty()) throw UnknownIriError(t.text, "unknown class");
    if (matches.size() > 1) throw UnknownIriError(t.text, "ambiguous class name (use a full IRI)");
    return matches.front();
  }

  Iri resolve_role(const Token& t) const {
    if (t.type == Tok::kIri) {
      if (!is_absolute_iri(t.text)) throw ParseError("not an absolute IRI: <" + t.text + ">", 1, t.column);
      const Iri iri(t.text);
      kb_.require_role(iri);
      return iri;
    }
    auto matches = kb_.roles_named(t.text);
    if (matches.empty()) throw UnknownIriError(t.text, "unknown object property");
    if (matches.size() > 1) throw UnknownIriError(t.text, "ambiguous property name (use a full IRI)");
    return matches.front();
  }

  std::string_view text_;
  const KnowledgeBase& kb_;
  std::size_t pos_ = 0;
  Token tok_{Tok::kEnd, "", 0};
};

}  // namespace

std::string render(const ClassExpression& e, Syntax syntax, IriStyle style) { return Renderer(syntax, style)(e); }

ClassExpression parse_expression(std::string_view text, const KnowledgeBase& kb) {
  return normalize(ManchesterParser(text, kb).parse());
}

}  // namespace cel
