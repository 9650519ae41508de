#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cel/iri.hpp"

namespace cel {

// An RDF literal kept exactly as written, e.g. "5"^^<http://...#integer>
// or "Anna"@en, including the surrounding quotes and escapes.
struct Literal {
  std::string lexical;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b);
};

// Parses a W3C N-Triples document. Blank nodes are rejected. Throws
// ParseError carrying the 1-based line number of the offending statement.
std::vector<Triple> parse_ntriples(std::string_view text);

// One statement per line in the given order.
std::string serialize_ntriples(const std::vector<Triple>& triples);

std::string to_ntriples_term(const Term& term);

// Reads a file and parses it as N-Triples. RDF/XML and OWL/XML inputs are
// detected and refused with an explanatory error.
std::vector<Triple> load_ntriples_file(const std::string& path);

}  // namespace cel
