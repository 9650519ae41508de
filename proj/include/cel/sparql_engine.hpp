#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cel/ntriples.hpp"
#include "cel/sparql_compiler.hpp"

namespace cel {

// In-memory triple set with per-position indexes, queried by the local SPARQL
// evaluator.
class TripleStore {
 public:
  using TermId = std::uint32_t;

  explicit TripleStore(const std::vector<Triple>& triples);

  std::size_t size() const noexcept { return spo_.size(); }
  const Term& term(TermId id) const { return terms_[id]; }
  std::optional<TermId> find(const Term& t) const;

  struct Row {
    TermId s, p, o;
  };
  const std::vector<Row>& rows() const noexcept { return spo_; }
  const std::vector<std::uint32_t>& with_subject(TermId id) const;
  const std::vector<std::uint32_t>& with_predicate(TermId id) const;
  const std::vector<std::uint32_t>& with_object(TermId id) const;

 private:
  TermId intern(const Term& t);

  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> ids_;
  std::vector<Row> spo_;
  std::vector<std::vector<std::uint32_t>> by_s_, by_p_, by_o_;
};

// Solutions of a SELECT query; rows align with `variables`.
struct SparqlResult {
  std::vector<std::string> variables;
  std::vector<std::vector<std::optional<Term>>> rows;
};

// Checks a query against the SPARQL 1.1 grammar subset this engine supports:
// PREFIX declarations, SELECT [DISTINCT] with WHERE, triple patterns with
// IRIs, prefixed names, variables, 'a' and literals, nested groups, UNION,
// VALUES, FILTER with boolean constants or [NOT] EXISTS, sub-selects, and
// GROUP BY with HAVING(COUNT([DISTINCT] ?v) op n). Throws ParseError.
void validate_sparql(std::string_view query);

// Parses and evaluates `query` over `store`. Rows are in a deterministic
// order. Throws ParseError on syntax outside the supported subset.
SparqlResult execute_local(const TripleStore& store, std::string_view query);

// IRIs bound to the root variable when the compiled query is evaluated over
// `store`, sorted and unique. Same contract as executing the query against
// an endpoint holding the same triples.
std::vector<Iri> evaluate_locally(const TripleStore& store, const CompiledQuery& query);

// application/sparql-results+json serialization.
std::string to_sparql_results_json(const SparqlResult& result);

}  // namespace cel
