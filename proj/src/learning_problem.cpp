#include "cel/learning_problem.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

#include "cel/error.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/reasoner.hpp"

namespace cel {

namespace {

std::vector<Iri> read_iri_list(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field)) throw ValidationError(field, "missing required field");
  const auto& list = doc.at(field);
  if (!list.is_array()) throw ValidationError(field, "must be an array of IRI strings");
  std::set<Iri> unique;
  for (const auto& item : list) {
    if (!item.is_string()) throw ValidationError(field, "must be an array of IRI strings");
    std::string value = item.get<std::string>();
    if (value.size() >= 2 && value.front() == '<' && value.back() == '>') value = value.substr(1, value.size() - 2);
    if (!is_absolute_iri(value)) throw ValidationError(field, "not an absolute IRI: '" + value + "'");
    unique.insert(Iri(value));
  }
  return {unique.begin(), unique.end()};
}

}  // namespace

LearningProblem load_learning_problem(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("", std::string("learning problem is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("", "learning problem must be a JSON object");

  LearningProblem lp;
  lp.positives = read_iri_list(doc, "positive_examples");
  lp.negatives = read_iri_list(doc, "negative_examples");
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ValidationError("label", "must be a string");
    lp.label = doc["label"].get<std::string>();
  }
  validate(lp);
  return lp;
}

void validate(const LearningProblem& lp) {
  if (lp.positives.empty()) throw ValidationError("positive_examples", "at least one positive example is required");
  const std::set<Iri> positives(lp.positives.begin(), lp.positives.end());
  for (const auto& n : lp.negatives) {
    if (positives.contains(n)) {
      throw ValidationError("negative_examples", "individual is both a positive and a negative example: " + n.str());
    }
  }
}

BoundProblem bind(const LearningProblem& lp, const KnowledgeBase& kb) {
  validate(lp);
  BoundProblem bound{IndividualSet(kb.universe_size()), IndividualSet(kb.universe_size())};
  for (const auto& p : lp.positives) bound.positives.set(kb.require_individual(p));
  for (const auto& n : lp.negatives) bound.negatives.set(kb.require_individual(n));
  bound.positive_count = bound.positives.count();
  bound.negative_count = bound.negatives.count();
  return bound;
}

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) return {0, 1};
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

namespace {
std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }
}  // namespace

Rational QualityResult::f1() const { return Rational::of(2 * i64(tp), 2 * i64(tp) + i64(fp) + i64(fn)); }
Rational QualityResult::accuracy() const { return Rational::of(i64(tp + tn), i64(tp + fp + tn + fn)); }
Rational QualityResult::precision() const { return Rational::of(i64(tp), i64(tp + fp)); }
Rational QualityResult::recall() const { return Rational::of(i64(tp), i64(tp + fn)); }

double score(const QualityResult& q, QualityMeasure measure) {
  return measure == QualityMeasure::kF1 ? q.f1().to_double() : q.accuracy().to_double();
}

QualityResult evaluate(const IndividualSet& retrieved, const BoundProblem& problem) {
  QualityResult q;
  q.tp = retrieved.intersection_count(problem.positives);
  q.fp = retrieved.intersection_count(problem.negatives);
  q.fn = problem.positive_count - q.tp;
  q.tn = problem.negative_count - q.fp;
  return q;
}

QualityResult evaluate(const InstanceRetriever& retriever, const BoundProblem& problem, const ClassExpression& e) {
  return evaluate(retriever.retrieve(e), problem);
}

}  // namespace cel
