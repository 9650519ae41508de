#include "cel/sparql_client.hpp"

#include <algorithm>
#include <set>

#include "httplib.h"
#include "json.hpp"

namespace cel {

EndpointError::EndpointError(EndpointErrorKind kind, const std::string& message, int status)
    : Error(message), kind_(kind), status_(status) {}

namespace {

[[noreturn]] void malformed(const std::string& detail) {
  throw EndpointError(EndpointErrorKind::kMalformedResults, "malformed SPARQL results: " + detail);
}

struct ParsedUrl {
  std::string origin;
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw EndpointError(EndpointErrorKind::kConnection, "endpoint URL lacks a scheme: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw EndpointError(EndpointErrorKind::kConnection, "unsupported endpoint scheme: " + scheme);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

SparqlResult parse_sparql_results_json(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object() || !doc.contains("head") || !doc["head"].is_object()) malformed("missing head");
  SparqlResult result;
  const auto& vars = doc["head"].value("vars", nlohmann::json::array());
  if (!vars.is_array()) malformed("head.vars is not an array");
  for (const auto& v : vars) {
    if (!v.is_string()) malformed("variable name is not a string");
    result.variables.push_back(v.get<std::string>());
  }
  if (!doc.contains("results") || !doc["results"].is_object() || !doc["results"].contains("bindings") ||
      !doc["results"]["bindings"].is_array()) {
    malformed("missing results.bindings");
  }
  for (const auto& binding : doc["results"]["bindings"]) {
    if (!binding.is_object()) malformed("binding is not an object");
    std::vector<std::optional<Term>> row(result.variables.size());
    for (std::size_t i = 0; i < result.variables.size(); ++i) {
      const auto it = binding.find(result.variables[i]);
      if (it == binding.end()) continue;
      if (!it->is_object() || !it->contains("type") || !it->contains("value") || !(*it)["value"].is_string()) {
        malformed("bad term for ?" + result.variables[i]);
      }
      const std::string type = (*it)["type"].get<std::string>();
      const std::string value = (*it)["value"].get<std::string>();
      if (type == "uri") {
        if (!is_absolute_iri(value)) malformed("invalid IRI " + value);
        row[i] = Iri(value);
      } else if (type == "literal" || type == "typed-literal") {
        std::string lexical = "\"" + value + "\"";
        if (it->contains("xml:lang")) {
          lexical += "@" + (*it)["xml:lang"].get<std::string>();
        } else if (it->contains("datatype")) {
          lexical += "^^<" + (*it)["datatype"].get<std::string>() + ">";
        }
        row[i] = Literal{lexical};
      } else if (type != "bnode") {
        malformed("unknown term type " + type);
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

SparqlResult execute_query(const std::string& endpoint_url, std::string_view query, const EndpointOptions& options) {
  const ParsedUrl url = split_url(endpoint_url);
  httplib::Client client(url.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  if (options.bearer_token) headers.emplace("Authorization", "Bearer " + *options.bearer_token);
  const httplib::Params params{{"query", std::string(query)}};

  const auto started = std::chrono::steady_clock::now();
  const auto response = client.Post(url.path, headers, params);
  if (!response) {
    const auto error = response.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const bool timed_out = error == httplib::Error::ConnectionTimeout ||
                           (error == httplib::Error::Read && elapsed >= options.timeout * 9 / 10);
    throw EndpointError(timed_out ? EndpointErrorKind::kTimeout : EndpointErrorKind::kConnection,
                        "endpoint " + endpoint_url + ": " + httplib::to_string(error));
  }
  if (response->status < 200 || response->status >= 300) {
    std::string snippet = response->body.substr(0, 200);
    throw EndpointError(EndpointErrorKind::kHttpStatus,
                        "endpoint " + endpoint_url + " returned HTTP " + std::to_string(response->status) +
                            (snippet.empty() ? "" : ": " + snippet),
                        response->status);
  }
  return parse_sparql_results_json(response->body);
}

std::vector<Iri> execute(const std::string& endpoint_url, const CompiledQuery& query, const EndpointOptions& options) {
  const SparqlResult result = execute_query(endpoint_url, query.query_text, options);
  const auto column = std::find(result.variables.begin(), result.variables.end(), query.root_variable);
  if (column == result.variables.end()) malformed("root variable ?" + query.root_variable + " not in head.vars");
  const auto index = static_cast<std::size_t>(column - result.variables.begin());
  std::set<Iri> iris;
  for (const auto& row : result.rows) {
    if (!row[index]) continue;
    const auto* iri = std::get_if<Iri>(&*row[index]);
    if (iri == nullptr) malformed("root variable bound to a literal");
    iris.insert(*iri);
  }
  return {iris.begin(), iris.end()};
}

SparqlRetriever::SparqlRetriever(std::string endpoint_url, const KnowledgeBase& kb, const ClassHierarchy& hierarchy,
                                 EndpointOptions options)
    : endpoint_url_(std::move(endpoint_url)), kb_(kb), hierarchy_(hierarchy), options_(std::move(options)) {}

IndividualSet SparqlRetriever::retrieve(const ClassExpression& e) const {
  const HierarchyView view{kb_, hierarchy_};
  const CompiledQuery query = compile(e, &view, true);
  IndividualSet out(kb_.universe_size());
  for (const Iri& iri : execute(endpoint_url_, query, options_)) {
    if (auto index = kb_.individual_index(iri)) out.set(*index);
  }
  return out;
}

namespace {

constexpr const char* kPrefixes =
    "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n"
    "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n"
    "PREFIX owl: <http://www.w3.org/2002/07/owl#>\n";

std::vector<Iri> iri_column(const SparqlResult& result, std::size_t column) {
  std::set<Iri> out;
  for (const auto& row : result.rows) {
    if (column < row.size() && row[column]) {
      if (const auto* iri = std::get_if<Iri>(&*row[column])) out.insert(*iri);
    }
  }
  return {out.begin(), out.end()};
}

std::string values_clause(const std::string& var, const std::vector<Iri>& iris) {
  std::string out = "VALUES " + var + " {";
  for (const auto& iri : iris) out += " <" + iri.str() + ">";
  return out + " }";
}

}  // namespace

KnowledgeBase load_endpoint_knowledge_base(const std::string& endpoint_url, const EndpointOptions& options,
                                           const LearningProblem* problem) {
  const auto run = [&](const std::string& body) { return execute_query(endpoint_url, kPrefixes + body, options); };
  const Iri rdf_type(vocab::kRdfType);
  const Iri owl_class(vocab::kOwlClass);
  const Iri owl_property(vocab::kOwlObjectProperty);
  const Iri named_individual(vocab::kOwlNamedIndividual);
  const Iri subclass_of(vocab::kRdfsSubClassOf);

  std::vector<Triple> triples;
  const std::vector<Iri> classes = iri_column(run("SELECT DISTINCT ?c WHERE { ?c rdf:type owl:Class . }"), 0);
  for (const auto& c : classes) triples.push_back({c, rdf_type, owl_class});
  const std::vector<Iri> roles = iri_column(run("SELECT DISTINCT ?p WHERE { ?p rdf:type owl:ObjectProperty . }"), 0);
  for (const auto& p : roles) triples.push_back({p, rdf_type, owl_property});

  const SparqlResult axioms = run("SELECT DISTINCT ?sub ?sup WHERE { ?sub rdfs:subClassOf ?sup . }");
  for (const auto& row : axioms.rows) {
    if (row.size() < 2 || !row[0] || !row[1]) continue;
    const auto* sub = std::get_if<Iri>(&*row[0]);
    const auto* sup = std::get_if<Iri>(&*row[1]);
    if (sub != nullptr && sup != nullptr) triples.push_back({*sub, subclass_of, *sup});
  }

  const std::vector<Iri> individuals = iri_column(
      run("SELECT DISTINCT ?i WHERE { { ?i rdf:type owl:NamedIndividual . } UNION "
          "{ ?i rdf:type ?c . ?c rdf:type owl:Class . } }"),
      0);
  for (const auto& i : individuals) triples.push_back({i, rdf_type, named_individual});

  if (problem != nullptr) {
    std::vector<Iri> examples = problem->positives;
    examples.insert(examples.end(), problem->negatives.begin(), problem->negatives.end());
    std::sort(examples.begin(), examples.end());
    examples.erase(std::unique(examples.begin(), examples.end()), examples.end());

    const std::set<Iri> role_set(roles.begin(), roles.end());
    const std::set<Iri> class_set(classes.begin(), classes.end());
    std::set<Iri> neighbours;
    const auto collect = [&](const std::vector<Iri>& subjects, bool follow) {
      if (subjects.empty()) return;
      const SparqlResult r = run("SELECT ?s ?p ?o WHERE { " + values_clause("?s", subjects) + " ?s ?p ?o . }");
      for (const auto& row : r.rows) {
        if (row.size() < 3 || !row[0] || !row[1] || !row[2]) continue;
        const auto* s = std::get_if<Iri>(&*row[0]);
        const auto* p = std::get_if<Iri>(&*row[1]);
        const auto* o = std::get_if<Iri>(&*row[2]);
        if (s == nullptr || p == nullptr || o == nullptr) continue;
        if (*p == rdf_type && class_set.contains(*o)) {
          triples.push_back({*s, *p, *o});
        } else if (role_set.contains(*p)) {
          triples.push_back({*s, *p, *o});
          if (follow) neighbours.insert(*o);
        }
      }
    };
    collect(examples, true);
    for (const auto& e : examples) neighbours.erase(e);
    collect({neighbours.begin(), neighbours.end()}, false);
  }
  return build_knowledge_base(triples);
}

}  // namespace cel
