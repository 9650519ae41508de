#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/individual_set.hpp"
#include "cel/iri.hpp"

namespace cel {

class KnowledgeBase;
class InstanceRetriever;

// Positive (E⁺) and negative (E⁻) example individuals. E⁺ is non-empty,
// E⁻ may be empty, and the two are disjoint.
struct LearningProblem {
  std::vector<Iri> positives;
  std::vector<Iri> negatives;
  std::optional<std::string> label;
};

// Parses `{ "label"?: string, "positive_examples": [IRI...],
// "negative_examples": [IRI...] }`. Duplicate IRIs within a list are merged.
// Throws ValidationError naming the offending field.
LearningProblem load_learning_problem(std::string_view json_text);

// Checks the disjointness / non-emptiness invariants.
void validate(const LearningProblem& lp);

// Example sets resolved against a knowledge-base universe.
struct BoundProblem {
  IndividualSet positives;
  IndividualSet negatives;
  std::size_t positive_count = 0;
  std::size_t negative_count = 0;
};

// Throws UnknownIriError for the first example not in Δ.
BoundProblem bind(const LearningProblem& lp, const KnowledgeBase& kb);

// Exact non-negative fraction in lowest terms. 0/0 is represented as 0/1.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return a.num * b.den <=> b.num * a.den;
  }
};

struct QualityResult {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  // 2tp / (2tp + fp + fn), 0 when the denominator is 0.
  Rational f1() const;
  // (tp + tn) / (|E⁺| + |E⁻|).
  Rational accuracy() const;
  Rational precision() const;
  Rational recall() const;

  friend bool operator==(const QualityResult&, const QualityResult&) = default;
};

enum class QualityMeasure { kF1, kAccuracy };

double score(const QualityResult& q, QualityMeasure measure);

// Confusion matrix of a retrieval set against the examples. Individuals
// outside E⁺ ∪ E⁻ do not contribute.
QualityResult evaluate(const IndividualSet& retrieved, const BoundProblem& problem);
QualityResult evaluate(const InstanceRetriever& retriever, const BoundProblem& problem, const ClassExpression& e);

}  // namespace cel
