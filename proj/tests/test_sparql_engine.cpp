#include <gtest/gtest.h>

#include "cel/error.hpp"
#include "cel/sparql_client.hpp"
#include "cel/sparql_engine.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

class Engine : public ::testing::Test {
 protected:
  static std::vector<Triple> graph() {
    return parse_ntriples(
        "<http://x.org/a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://x.org/C> .\n"
        "<http://x.org/b> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://x.org/D> .\n"
        "<http://x.org/a> <http://x.org/knows> <http://x.org/b> .\n"
        "<http://x.org/a> <http://x.org/knows> <http://x.org/c> .\n"
        "<http://x.org/c> <http://x.org/knows> <http://x.org/a> .\n"
        "<http://x.org/c> <http://x.org/name> \"Cee\"@en .\n");
  }
  TripleStore store{graph()};

  std::vector<std::string> column(const std::string& query, std::size_t index = 0) {
    const SparqlResult r = execute_local(store, query);
    std::vector<std::string> out;
    for (const auto& row : r.rows) {
      if (!row[index]) {
        out.push_back("UNDEF");
      } else if (const auto* iri = std::get_if<Iri>(&*row[index])) {
        out.emplace_back(iri->local_name());
      } else {
        out.push_back(std::get<Literal>(*row[index]).lexical);
      }
    }
    return out;
  }
};

TEST_F(Engine, BasicPatternsAndPrefixes) {
  EXPECT_EQ(column("PREFIX ex: <http://x.org/> SELECT ?s WHERE { ?s a ex:C . }"), (std::vector<std::string>{"a"}));
  EXPECT_EQ(column("SELECT DISTINCT ?s WHERE { ?s <http://x.org/knows> ?o }"), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(column("SELECT ?s WHERE { ?s <http://x.org/knows> ?o }").size(), 3U);
  EXPECT_EQ(column("SELECT ?n WHERE { <http://x.org/c> <http://x.org/name> ?n }"),
            (std::vector<std::string>{"\"Cee\"@en"}));
  EXPECT_EQ(column("SELECT ?s WHERE { ?s <http://x.org/name> \"Cee\"@en }"), (std::vector<std::string>{"c"}));
}

TEST_F(Engine, JoinsRepeatedVariables) {
  EXPECT_EQ(column("SELECT ?x WHERE { ?x <http://x.org/knows> ?y . ?y <http://x.org/knows> ?x . }"),
            (std::vector<std::string>{"a", "c"}));
}

TEST_F(Engine, UnionValuesAndFilters) {
  EXPECT_EQ(column("SELECT DISTINCT ?x WHERE { { ?x a <http://x.org/C> } UNION { ?x a <http://x.org/D> } }"),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(column("SELECT ?x WHERE { VALUES ?c { <http://x.org/D> <http://x.org/E> } ?x a ?c . }"),
            (std::vector<std::string>{"b"}));
  EXPECT_EQ(column("SELECT DISTINCT ?x WHERE { ?x ?p ?o . FILTER NOT EXISTS { ?x a <http://x.org/C> } }"),
            (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(column("SELECT DISTINCT ?x WHERE { ?x ?p ?o . FILTER EXISTS { ?x a <http://x.org/C> } }"),
            (std::vector<std::string>{"a"}));
  EXPECT_TRUE(column("SELECT ?x WHERE { ?x ?p ?o . FILTER(false) }").empty());
  EXPECT_EQ(column("SELECT ?x WHERE { ?x a <http://x.org/C> . FILTER(true) }"), (std::vector<std::string>{"a"}));
}

TEST_F(Engine, GroupByHaving) {
  EXPECT_EQ(column("SELECT ?x WHERE { { SELECT ?x WHERE { ?x <http://x.org/knows> ?y } GROUP BY ?x "
                   "HAVING(COUNT(DISTINCT ?y) >= 2) } }"),
            (std::vector<std::string>{"a"}));
  EXPECT_EQ(column("SELECT ?x WHERE { ?x <http://x.org/knows> ?y } GROUP BY ?x HAVING(COUNT(?y) = 1)"),
            (std::vector<std::string>{"c"}));
}

TEST_F(Engine, SelectStarAndLimit) {
  const SparqlResult r = execute_local(store, "SELECT * WHERE { ?s <http://x.org/knows> ?o } LIMIT 2");
  EXPECT_EQ(r.variables, (std::vector<std::string>{"s", "o"}));
  EXPECT_EQ(r.rows.size(), 2U);
}

TEST_F(Engine, UnknownConstantsMatchNothing) {
  EXPECT_TRUE(column("SELECT ?x WHERE { ?x a <http://x.org/Nope> }").empty());
}

TEST_F(Engine, ResultsJsonRoundTrip) {
  const SparqlResult r = execute_local(store, "SELECT ?s ?o WHERE { ?s ?p ?o }");
  const SparqlResult back = parse_sparql_results_json(to_sparql_results_json(r));
  EXPECT_EQ(back.variables, r.variables);
  EXPECT_EQ(back.rows, r.rows);
}

TEST(SparqlGrammar, RejectsMalformedAndUnsupportedQueries) {
  EXPECT_THROW(validate_sparql("SELECT ?x WHERE { ?x ?p }"), ParseError);
  EXPECT_THROW(validate_sparql("SELECT WHERE { ?x ?p ?o }"), ParseError);
  EXPECT_THROW(validate_sparql("SELECT ?x WHERE { ?x ex:p ?o }"), ParseError);
  EXPECT_THROW(validate_sparql("SELECT ?x WHERE { ?x ?p ?o . OPTIONAL { ?x ?q ?r } }"), ParseError);
  EXPECT_THROW(validate_sparql("ASK { ?x ?p ?o }"), ParseError);
  EXPECT_THROW(validate_sparql("SELECT ?x WHERE { ?x ?p ?o "), ParseError);
  EXPECT_THROW(validate_sparql("SELECT ?y WHERE { ?x ?p ?o } GROUP BY ?x"), ParseError);
  EXPECT_NO_THROW(validate_sparql("PREFIX : <http://x.org/>\nSELECT DISTINCT ?x WHERE { ?x :p ?o ; :q ?r , ?s . }"));
  try {
    validate_sparql("SELECT ?x\nWHERE { ?x ?p ?o . FILTER(maybe) }");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_GT(e.column(), 1U);
  }
}

}  // namespace
}  // namespace cel
