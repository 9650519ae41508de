#include "cel/sparql_engine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <variant>

#include "cel/error.hpp"
#include "json.hpp"

namespace cel {

// ---------------------------------------------------------------------------
// TripleStore

namespace {
std::string term_key(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return "<" + iri->str();
  return "\"" + std::get<Literal>(t).lexical;
}
}  // namespace

TripleStore::TripleStore(const std::vector<Triple>& triples) {
  std::vector<Triple> sorted = triples;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& t : sorted) {
    const Row row{intern(t.subject), intern(t.predicate), intern(t.object)};
    by_s_.resize(terms_.size());
    by_p_.resize(terms_.size());
    by_o_.resize(terms_.size());
    const auto index = static_cast<std::uint32_t>(spo_.size());
    by_s_[row.s].push_back(index);
    by_p_[row.p].push_back(index);
    by_o_[row.o].push_back(index);
    spo_.push_back(row);
  }
}

TripleStore::TermId TripleStore::intern(const Term& t) {
  auto [it, inserted] = ids_.emplace(term_key(t), static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(t);
  return it->second;
}

std::optional<TripleStore::TermId> TripleStore::find(const Term& t) const {
  if (auto it = ids_.find(term_key(t)); it != ids_.end()) return it->second;
  return std::nullopt;
}

namespace {
const std::vector<std::uint32_t> kNoRows;
}

const std::vector<std::uint32_t>& TripleStore::with_subject(TermId id) const {
  return id < by_s_.size() ? by_s_[id] : kNoRows;
}
const std::vector<std::uint32_t>& TripleStore::with_predicate(TermId id) const {
  return id < by_p_.size() ? by_p_[id] : kNoRows;
}
const std::vector<std::uint32_t>& TripleStore::with_object(TermId id) const {
  return id < by_o_.size() ? by_o_[id] : kNoRows;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class T { kIri, kPname, kVar, kWord, kNumber, kString, kPunct, kEnd };

struct Token {
  T type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view q) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, line_start = 0;
  const auto fail = [&](const std::string& m) -> void { throw ParseError(m, line, i - line_start + 1); };
  while (i < q.size()) {
    const char c = q[i];
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < q.size() && q[i] != '\n') ++i;
      continue;
    }
    const std::size_t col = i - line_start + 1;
    const auto push = [&](T type, std::string text) { out.push_back({type, std::move(text), line, col}); };
    if (c == '<') {
      std::size_t j = i + 1;
      while (j < q.size() && q[j] != '>' && !std::isspace(static_cast<unsigned char>(q[j])) && q[j] != '<' &&
             q[j] != '"' && q[j] != '{' && q[j] != '}')
        ++j;
      if (j < q.size() && q[j] == '>') {
        push(T::kIri, std::string(q.substr(i + 1, j - i - 1)));
        i = j + 1;
        continue;
      }
      if (i + 1 < q.size() && q[i + 1] == '=') {
        push(T::kPunct, "<=");
        i += 2;
      } else {
        push(T::kPunct, "<");
        ++i;
      }
      continue;
    }
    if (c == '?' || c == '$') {
      std::size_t j = i + 1;
      while (j < q.size() && (std::isalnum(static_cast<unsigned char>(q[j])) || q[j] == '_')) ++j;
      if (j == i + 1) fail("empty variable name");
      push(T::kVar, std::string(q.substr(i + 1, j - i - 1)));
      i = j;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < q.size() && q[j] != '"') {
        if (q[j] == '\\') ++j;
        if (q[j] == '\n') fail("line break in string literal");
        ++j;
      }
      if (j >= q.size()) fail("unterminated string literal");
      ++j;
      if (j < q.size() && q[j] == '@') {
        ++j;
        while (j < q.size() && (std::isalnum(static_cast<unsigned char>(q[j])) || q[j] == '-')) ++j;
      } else if (q.substr(j, 2) == "^^") {
        j += 2;
        if (j < q.size() && q[j] == '<') {
          const std::size_t close = q.find('>', j);
          if (close == std::string_view::npos) fail("unterminated datatype IRI");
          j = close + 1;
        } else {
          while (j < q.size() && (std::isalnum(static_cast<unsigned char>(q[j])) || q[j] == ':' || q[j] == '_')) ++j;
        }
      }
      push(T::kString, std::string(q.substr(i, j - i)));
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < q.size() && std::isdigit(static_cast<unsigned char>(q[j]))) ++j;
      push(T::kNumber, std::string(q.substr(i, j - i)));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') {
      std::size_t j = i;
      while (j < q.size() && (std::isalnum(static_cast<unsigned char>(q[j])) || q[j] == '_' || q[j] == '-')) ++j;
      if (j < q.size() && q[j] == ':') {
        ++j;
        while (j < q.size() && (std::isalnum(static_cast<unsigned char>(q[j])) || q[j] == '_' || q[j] == '-' ||
                                q[j] == '.' || q[j] == ':' || q[j] == '%'))
          ++j;
        while (q[j - 1] == '.') --j;
        push(T::kPname, std::string(q.substr(i, j - i)));
      } else {
        push(T::kWord, std::string(q.substr(i, j - i)));
      }
      i = j;
      continue;
    }
    if (c == '>' || c == '!') {
      if (i + 1 < q.size() && q[i + 1] == '=') {
        push(T::kPunct, std::string(1, c) + "=");
        i += 2;
        continue;
      }
      if (c == '!') fail("unexpected '!'");
      push(T::kPunct, ">");
      ++i;
      continue;
    }
    if (std::string_view("{}().,;*=").find(c) != std::string_view::npos) {
      push(T::kPunct, std::string(1, c));
      ++i;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  out.push_back({T::kEnd, "end of query", line, i - line_start + 1});
  return out;
}

// ---------------------------------------------------------------------------
// AST

using TermId = TripleStore::TermId;
constexpr TermId kUnbound = static_cast<TermId>(-1);

struct PTerm {
  int var = -1;
  TermId id = 0;
};

struct PTriple {
  PTerm s, p, o;
};

struct Group;
struct Select;

struct UnionP {
  std::vector<std::shared_ptr<Group>> branches;
};

struct ValuesP {
  int var;
  std::vector<TermId> values;  // kUnbound for UNDEF
};

struct FilterP {
  enum class Kind { kConstant, kExists, kNotExists } kind;
  bool value = true;
  std::shared_ptr<Group> group;
};

using Element = std::variant<PTriple, UnionP, std::shared_ptr<Group>, ValuesP, std::shared_ptr<Select>>;

struct Group {
  std::vector<Element> elements;
  std::vector<FilterP> filters;
};

struct Having {
  int var = -1;  // -1 counts rows (COUNT(*))
  bool distinct = false;
  std::string op;
  long long n = 0;
};

struct Select {
  bool distinct = false;
  bool star = false;
  std::vector<int> projection;
  std::shared_ptr<Group> where;
  std::vector<int> group_by;
  std::optional<Having> having;
  std::optional<std::size_t> limit;
};

struct Query {
  std::vector<std::string> variables;
  std::vector<Term> local_terms;  // constants absent from the store
  std::shared_ptr<Select> select;
};

// ---------------------------------------------------------------------------
// Parser

bool word_is(const Token& t, std::string_view kw) {
  if (t.type != T::kWord || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const TripleStore& store) : tokens_(lex(text)), store_(store) {}

  Query parse() {
    while (word_is(peek(), "PREFIX") || word_is(peek(), "BASE")) {
      if (word_is(next(), "BASE")) {
        expect_type(T::kIri, "IRI after BASE");
        continue;
      }
      const Token& ns = peek();
      if (ns.type != T::kPname || ns.text.back() != ':') fail("expected prefix name ending in ':'");
      const std::string prefix = next().text;
      prefixes_[prefix.substr(0, prefix.size() - 1)] = expect_type(T::kIri, "IRI for PREFIX").text;
    }
    if (!word_is(peek(), "SELECT")) fail("expected SELECT (only SELECT queries are supported)");
    query_.select = select();
    if (peek().type != T::kEnd) fail("unexpected '" + peek().text + "' after query");
    return std::move(query_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool at_punct(std::string_view p) const { return peek().type == T::kPunct && peek().text == p; }
  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "', found '" + peek().text + "'");
    ++pos_;
  }
  const Token& expect_type(T type, const char* what) {
    if (peek().type != type) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return next();
  }
  void expect_word(std::string_view kw) {
    if (!word_is(peek(), kw)) fail("expected " + std::string(kw) + ", found '" + peek().text + "'");
    ++pos_;
  }

  int variable(const std::string& name) {
    auto it = std::find(query_.variables.begin(), query_.variables.end(), name);
    if (it != query_.variables.end()) return static_cast<int>(it - query_.variables.begin());
    query_.variables.push_back(name);
    return static_cast<int>(query_.variables.size() - 1);
  }

  TermId constant(const Term& t) {
    if (auto id = store_.find(t)) return *id;
    for (std::size_t i = 0; i < query_.local_terms.size(); ++i) {
      if (query_.local_terms[i] == t) return static_cast<TermId>(kLocalBase + i);
    }
    query_.local_terms.push_back(t);
    return static_cast<TermId>(kLocalBase + query_.local_terms.size() - 1);
  }

  Iri iri_of(const Token& t) {
    std::string value;
    if (t.type == T::kIri) {
      value = t.text;
    } else {
      const auto colon = t.text.find(':');
      const auto it = prefixes_.find(t.text.substr(0, colon));
      if (it == prefixes_.end()) fail("undeclared prefix '" + t.text.substr(0, colon) + ":'");
      value = it->second + t.text.substr(colon + 1);
    }
    if (!is_absolute_iri(value)) fail("not an absolute IRI: <" + value + ">");
    return Iri(value);
  }

  std::shared_ptr<Select> select() {
    expect_word("SELECT");
    auto s = std::make_shared<Select>();
    if (word_is(peek(), "DISTINCT") || word_is(peek(), "REDUCED")) s->distinct = word_is(next(), "DISTINCT");
    if (at_punct("*")) {
      ++pos_;
      s->star = true;
    } else {
      while (peek().type == T::kVar) s->projection.push_back(variable(next().text));
      if (s->projection.empty()) fail("expected projection variables or '*'");
    }
    if (word_is(peek(), "WHERE")) ++pos_;
    s->where = group();
    if (word_is(peek(), "GROUP")) {
      ++pos_;
      expect_word("BY");
      while (peek().type == T::kVar) s->group_by.push_back(variable(next().text));
      if (s->group_by.empty()) fail("expected variables after GROUP BY");
    }
    if (word_is(peek(), "HAVING")) {
      ++pos_;
      expect_punct("(");
      s->having = having();
      expect_punct(")");
    }
    if (word_is(peek(), "LIMIT")) {
      ++pos_;
      s->limit = std::stoull(expect_type(T::kNumber, "integer after LIMIT").text);
    }
    if (!s->group_by.empty() || s->having) {
      for (int v : s->projection) {
        if (std::find(s->group_by.begin(), s->group_by.end(), v) == s->group_by.end()) {
          fail("projected variable ?" + query_.variables[static_cast<std::size_t>(v)] + " is not grouped");
        }
      }
      if (s->star) fail("SELECT * is not allowed with GROUP BY");
    }
    return s;
  }

  Having having() {
    Having h;
    expect_word("COUNT");
    expect_punct("(");
    if (word_is(peek(), "DISTINCT")) {
      ++pos_;
      h.distinct = true;
    }
    if (at_punct("*")) {
      ++pos_;
    } else {
      h.var = variable(expect_type(T::kVar, "variable in COUNT").text);
    }
    expect_punct(")");
    const Token& op = peek();
    if (op.type != T::kPunct || (op.text != ">=" && op.text != ">" && op.text != "=" && op.text != "<=" &&
                                 op.text != "<" && op.text != "!=")) {
      fail("expected comparison operator in HAVING");
    }
    h.op = next().text;
    h.n = std::stoll(expect_type(T::kNumber, "integer in HAVING").text);
    return h;
  }

  std::shared_ptr<Group> group() {
    expect_punct("{");
    auto g = std::make_shared<Group>();
    if (word_is(peek(), "SELECT")) {
      g->elements.emplace_back(select());
      expect_punct("}");
      return g;
    }
    while (!at_punct("}")) {
      if (peek().type == T::kEnd) fail("unterminated group pattern");
      if (at_punct("{")) {
        UnionP u;
        u.branches.push_back(group());
        while (word_is(peek(), "UNION")) {
          ++pos_;
          u.branches.push_back(group());
        }
        if (u.branches.size() == 1) {
          g->elements.emplace_back(u.branches.front());
        } else {
          g->elements.emplace_back(std::move(u));
        }
        if (at_punct(".")) ++pos_;
      } else if (word_is(peek(), "FILTER")) {
        ++pos_;
        g->filters.push_back(filter());
        if (at_punct(".")) ++pos_;
      } else if (word_is(peek(), "VALUES")) {
        ++pos_;
        g->elements.emplace_back(values());
        if (at_punct(".")) ++pos_;
      } else if (word_is(peek(), "OPTIONAL") || word_is(peek(), "MINUS") || word_is(peek(), "BIND") ||
                 word_is(peek(), "SERVICE") || word_is(peek(), "GRAPH")) {
        fail(peek().text + " is not supported by the local evaluator");
      } else {
        triples_block(*g);
      }
    }
    expect_punct("}");
    return g;
  }

  FilterP filter() {
    bool bracketed = false;
    if (at_punct("(")) {
      ++pos_;
      bracketed = true;
    }
    FilterP f;
    f.kind = FilterP::Kind::kConstant;
    if (word_is(peek(), "NOT")) {
      ++pos_;
      expect_word("EXISTS");
      f.kind = FilterP::Kind::kNotExists;
      f.group = group();
    } else if (word_is(peek(), "EXISTS")) {
      ++pos_;
      f.kind = FilterP::Kind::kExists;
      f.group = group();
    } else if (bracketed && (word_is(peek(), "TRUE") || word_is(peek(), "FALSE"))) {
      f.value = word_is(next(), "TRUE");
    } else {
      fail("unsupported FILTER expression");
    }
    if (bracketed) expect_punct(")");
    return f;
  }

  ValuesP values() {
    ValuesP v{variable(expect_type(T::kVar, "variable after VALUES").text), {}};
    expect_punct("{");
    while (!at_punct("}")) {
      const Token& t = peek();
      if (word_is(t, "UNDEF")) {
        ++pos_;
        v.values.push_back(kUnbound);
      } else if (t.type == T::kIri || t.type == T::kPname) {
        v.values.push_back(constant(iri_of(next())));
      } else if (t.type == T::kString) {
        v.values.push_back(constant(Literal{next().text}));
      } else {
        fail("expected data value in VALUES block");
      }
    }
    expect_punct("}");
    return v;
  }

  PTerm term(bool predicate) {
    const Token& t = peek();
    if (t.type == T::kVar) return {variable(next().text), 0};
    if (t.type == T::kIri || t.type == T::kPname) return {-1, constant(iri_of(next()))};
    if (predicate && t.type == T::kWord && t.text == "a") {
      ++pos_;
      return {-1, constant(Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"))};
    }
    if (!predicate && t.type == T::kString) return {-1, constant(Literal{next().text})};
    if (!predicate && t.type == T::kNumber) return {-1, constant(Literal{next().text})};
    fail("expected RDF term, found '" + t.text + "'");
  }

  void triples_block(Group& g) {
    const PTerm s = term(false);
    while (true) {
      const PTerm p = term(true);
      while (true) {
        g.elements.emplace_back(PTriple{s, p, term(false)});
        if (!at_punct(",")) break;
        ++pos_;
      }
      if (!at_punct(";")) break;
      ++pos_;
      if (at_punct(".") || at_punct("}")) break;
    }
    if (at_punct(".")) {
      ++pos_;
    } else if (!at_punct("}") && !at_punct("{") && !word_is(peek(), "FILTER") && !word_is(peek(), "VALUES")) {
      fail("expected '.' after triple pattern, found '" + peek().text + "'");
    }
  }

  static constexpr std::size_t kLocalBase = 0x80000000u;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const TripleStore& store_;
  std::map<std::string, std::string> prefixes_;
  Query query_;

 public:
  static constexpr std::size_t local_base() { return kLocalBase; }
};

// ---------------------------------------------------------------------------
// Evaluator

using Row = std::vector<TermId>;

class Evaluator {
 public:
  Evaluator(const TripleStore& store, const Query& query) : store_(store), query_(query) {}

  std::vector<Row> run_select(const Select& s) const {
    const std::vector<Row> solutions = eval_group(*s.where, {Row(query_.variables.size(), kUnbound)});
    std::vector<Row> out;
    if (!s.group_by.empty() || s.having) {
      std::map<Row, std::vector<const Row*>> buckets;
      std::vector<Row> order;
      for (const auto& r : solutions) {
        Row key;
        for (int v : s.group_by) key.push_back(r[static_cast<std::size_t>(v)]);
        auto [it, inserted] = buckets.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
      }
      for (const auto& key : order) {
        const auto& members = buckets.at(key);
        if (s.having && !having_holds(*s.having, members)) continue;
        Row row(query_.variables.size(), kUnbound);
        for (std::size_t i = 0; i < s.group_by.size(); ++i) row[static_cast<std::size_t>(s.group_by[i])] = key[i];
        out.push_back(std::move(row));
      }
    } else {
      for (const auto& r : solutions) {
        if (s.star) {
          out.push_back(r);
          continue;
        }
        Row row(query_.variables.size(), kUnbound);
        for (int v : s.projection) row[static_cast<std::size_t>(v)] = r[static_cast<std::size_t>(v)];
        out.push_back(std::move(row));
      }
    }
    if (s.distinct) {
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    if (s.limit && out.size() > *s.limit) out.resize(*s.limit);
    return out;
  }

  const Term& term(TermId id) const {
    if (id >= Parser::local_base()) return query_.local_terms[id - Parser::local_base()];
    return store_.term(id);
  }

 private:
  bool having_holds(const Having& h, const std::vector<const Row*>& members) const {
    long long count = 0;
    if (h.var < 0) {
      count = static_cast<long long>(members.size());
    } else {
      std::set<TermId> distinct;
      for (const Row* r : members) {
        const TermId v = (*r)[static_cast<std::size_t>(h.var)];
        if (v == kUnbound) continue;
        if (h.distinct) {
          distinct.insert(v);
        } else {
          ++count;
        }
      }
      if (h.distinct) count = static_cast<long long>(distinct.size());
    }
    if (h.op == ">=") return count >= h.n;
    if (h.op == ">") return count > h.n;
    if (h.op == "=") return count == h.n;
    if (h.op == "<=") return count <= h.n;
    if (h.op == "<") return count < h.n;
    return count != h.n;
  }

  std::vector<Row> eval_group(const Group& g, std::vector<Row> rows) const {
    for (const auto& element : g.elements) {
      if (rows.empty()) break;
      rows = std::visit([&](const auto& e) { return apply(e, rows); }, element);
    }
    for (const auto& f : g.filters) {
      std::vector<Row> kept;
      for (auto& r : rows) {
        if (filter_holds(f, r)) kept.push_back(std::move(r));
      }
      rows = std::move(kept);
    }
    return rows;
  }

  bool filter_holds(const FilterP& f, const Row& r) const {
    switch (f.kind) {
      case FilterP::Kind::kConstant:
        return f.value;
      case FilterP::Kind::kExists:
        return !eval_group(*f.group, {r}).empty();
      case FilterP::Kind::kNotExists:
        return eval_group(*f.group, {r}).empty();
    }
    return false;
  }

  std::vector<Row> apply(const PTriple& t, const std::vector<Row>& rows) const {
    std::vector<Row> out;
    for (const auto& r : rows) match(t, r, out);
    return out;
  }

  std::vector<Row> apply(const UnionP& u, const std::vector<Row>& rows) const {
    std::vector<Row> out;
    for (const auto& branch : u.branches) {
      auto part = eval_group(*branch, rows);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }

  std::vector<Row> apply(const std::shared_ptr<Group>& g, const std::vector<Row>& rows) const {
    return eval_group(*g, rows);
  }

  std::vector<Row> apply(const ValuesP& v, const std::vector<Row>& rows) const {
    std::vector<Row> out;
    const auto slot = static_cast<std::size_t>(v.var);
    for (const auto& r : rows) {
      for (TermId value : v.values) {
        if (value == kUnbound || r[slot] == value) {
          out.push_back(r);
        } else if (r[slot] == kUnbound) {
          out.push_back(r);
          out.back()[slot] = value;
        }
      }
    }
    return out;
  }

  std::vector<Row> apply(const std::shared_ptr<Select>& s, const std::vector<Row>& rows) const {
    const std::vector<Row> sub = run_select(*s);
    std::vector<Row> out;
    for (const auto& r : rows) {
      for (const auto& candidate : sub) {
        Row merged = r;
        bool compatible = true;
        for (std::size_t i = 0; i < merged.size(); ++i) {
          if (candidate[i] == kUnbound) continue;
          if (merged[i] == kUnbound) {
            merged[i] = candidate[i];
          } else if (merged[i] != candidate[i]) {
            compatible = false;
            break;
          }
        }
        if (compatible) out.push_back(std::move(merged));
      }
    }
    return out;
  }

  void match(const PTriple& t, const Row& r, std::vector<Row>& out) const {
    const auto resolve = [&](const PTerm& p) { return p.var >= 0 ? r[static_cast<std::size_t>(p.var)] : p.id; };
    const TermId s = resolve(t.s), p = resolve(t.p), o = resolve(t.o);
    for (TermId bound : {s, p, o}) {
      if (bound != kUnbound && bound >= Parser::local_base()) return;
    }
    const std::vector<std::uint32_t>* candidates = nullptr;
    const auto consider = [&](TermId id, const std::vector<std::uint32_t>& (TripleStore::*index)(TermId) const) {
      if (id == kUnbound) return;
      const auto& list = (store_.*index)(id);
      if (candidates == nullptr || list.size() < candidates->size()) candidates = &list;
    };
    consider(s, &TripleStore::with_subject);
    consider(p, &TripleStore::with_predicate);
    consider(o, &TripleStore::with_object);

    const auto try_row = [&](const TripleStore::Row& row) {
      Row next = r;
      const auto bind = [&](const PTerm& pt, TermId value) {
        if (pt.var < 0) return pt.id == value;
        TermId& slot = next[static_cast<std::size_t>(pt.var)];
        if (slot == kUnbound) {
          slot = value;
          return true;
        }
        return slot == value;
      };
      if (bind(t.s, row.s) && bind(t.p, row.p) && bind(t.o, row.o)) out.push_back(std::move(next));
    };
    if (candidates != nullptr) {
      for (std::uint32_t i : *candidates) try_row(store_.rows()[i]);
    } else {
      for (const auto& row : store_.rows()) try_row(row);
    }
  }

  const TripleStore& store_;
  const Query& query_;
};

std::string result_sort_key(const SparqlResult& result, const std::vector<std::optional<Term>>& row) {
  (void)result;
  std::string key;
  for (const auto& cell : row) {
    key += cell ? term_key(*cell) : std::string();
    key += '\x1f';
  }
  return key;
}

}  // namespace

void validate_sparql(std::string_view query) {
  static const TripleStore empty({});
  Parser(query, empty).parse();
}

SparqlResult execute_local(const TripleStore& store, std::string_view query) {
  const Query q = Parser(query, store).parse();
  const Evaluator evaluator(store, q);
  const std::vector<Row> rows = evaluator.run_select(*q.select);

  SparqlResult result;
  std::vector<int> columns;
  if (q.select->star) {
    for (std::size_t i = 0; i < q.variables.size(); ++i) columns.push_back(static_cast<int>(i));
  } else {
    columns = q.select->projection;
  }
  for (int c : columns) result.variables.push_back(q.variables[static_cast<std::size_t>(c)]);
  for (const auto& r : rows) {
    std::vector<std::optional<Term>> out;
    for (int c : columns) {
      const TermId id = r[static_cast<std::size_t>(c)];
      out.push_back(id == kUnbound ? std::nullopt : std::optional<Term>(evaluator.term(id)));
    }
    result.rows.push_back(std::move(out));
  }
  std::vector<std::pair<std::string, std::size_t>> order;
  for (std::size_t i = 0; i < result.rows.size(); ++i) order.emplace_back(result_sort_key(result, result.rows[i]), i);
  std::sort(order.begin(), order.end());
  std::vector<std::vector<std::optional<Term>>> sorted;
  for (const auto& [key, i] : order) sorted.push_back(std::move(result.rows[i]));
  result.rows = std::move(sorted);
  return result;
}

std::vector<Iri> evaluate_locally(const TripleStore& store, const CompiledQuery& query) {
  const SparqlResult result = execute_local(store, query.query_text);
  const auto column = std::find(result.variables.begin(), result.variables.end(), query.root_variable);
  if (column == result.variables.end()) throw Error("root variable is not projected");
  const auto index = static_cast<std::size_t>(column - result.variables.begin());
  std::set<Iri> iris;
  for (const auto& row : result.rows) {
    if (row[index]) {
      if (const auto* iri = std::get_if<Iri>(&*row[index])) iris.insert(*iri);
    }
  }
  return {iris.begin(), iris.end()};
}

std::string to_sparql_results_json(const SparqlResult& result) {
  nlohmann::ordered_json doc;
  doc["head"]["vars"] = result.variables;
  auto& bindings = doc["results"]["bindings"];
  bindings = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i]) continue;
      if (const auto* iri = std::get_if<Iri>(&*row[i])) {
        b[result.variables[i]] = {{"type", "uri"}, {"value", iri->str()}};
      } else {
        const std::string& lexical = std::get<Literal>(*row[i]).lexical;
        const auto close = lexical.rfind('"');
        nlohmann::ordered_json term = {{"type", "literal"},
                                       {"value", close > 0 ? lexical.substr(1, close - 1) : lexical}};
        const std::string suffix = close > 0 ? lexical.substr(close + 1) : std::string();
        if (suffix.starts_with("@")) {
          term["xml:lang"] = suffix.substr(1);
        } else if (suffix.starts_with("^^<") && suffix.ends_with(">")) {
          term["datatype"] = suffix.substr(3, suffix.size() - 4);
        }
        b[result.variables[i]] = std::move(term);
      }
    }
    bindings.push_back(std::move(b));
  }
  return doc.dump();
}

}  // namespace cel
