#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cel/class_hierarchy.hpp"
#include "cel/error.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/learning_problem.hpp"
#include "cel/reasoner.hpp"
#include "cel/sparql_compiler.hpp"
#include "cel/sparql_engine.hpp"

namespace cel {

enum class EndpointErrorKind { kConnection, kTimeout, kHttpStatus, kMalformedResults };

// Endpoint failure, as opposed to an empty result.
class EndpointError : public Error {
 public:
  EndpointError(EndpointErrorKind kind, const std::string& message, int status = 0);
  EndpointErrorKind kind() const noexcept { return kind_; }
  // HTTP status for kHttpStatus, else 0.
  int status() const noexcept { return status_; }

 private:
  EndpointErrorKind kind_;
  int status_;
};

struct EndpointOptions {
  std::chrono::milliseconds timeout{30000};
  // Sent as "Authorization: Bearer <token>".
  std::optional<std::string> bearer_token;
};

// Parses application/sparql-results+json. Throws EndpointError(kMalformedResults).
SparqlResult parse_sparql_results_json(std::string_view body);

// SPARQL 1.1 Protocol query via POST (form-encoded `query`).
SparqlResult execute_query(const std::string& endpoint_url, std::string_view query, const EndpointOptions& options);

// IRIs bound to the root variable, sorted and unique.
std::vector<Iri> execute(const std::string& endpoint_url, const CompiledQuery& query, const EndpointOptions& options);

// Retrieval through an endpoint: compile with hierarchy expansion, execute,
// and project the answers onto the knowledge-base universe.
class SparqlRetriever : public InstanceRetriever {
 public:
  SparqlRetriever(std::string endpoint_url, const KnowledgeBase& kb, const ClassHierarchy& hierarchy,
                  EndpointOptions options = {});
  IndividualSet retrieve(const ClassExpression& e) const override;

 private:
  std::string endpoint_url_;
  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  EndpointOptions options_;
};

// Builds the learning-side view of a remote graph: class and role
// declarations, the direct subclass axioms, the named individuals, and the
// assertions about the given examples and their direct neighbours.
KnowledgeBase load_endpoint_knowledge_base(const std::string& endpoint_url, const EndpointOptions& options,
                                           const LearningProblem* problem = nullptr);

}  // namespace cel
