#pragma once

#include <exception>
#include <vector>

#include "cel/class_expression.hpp"
#include "cel/learning_problem.hpp"
#include "cel/reasoner.hpp"

namespace cel::detail {

struct Evaluation {
  QualityResult confusion;
  std::size_t retrieval_size = 0;
};

// Evaluates every candidate; results are stored by candidate index so the
// merge order is independent of thread scheduling. The first failure (in
// index order) is rethrown after the loop.
inline std::vector<Evaluation> evaluate_batch(const InstanceRetriever& retriever, const BoundProblem& problem,
                                              const std::vector<ClassExpression>& batch, bool parallel) {
  std::vector<Evaluation> out(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(dynamic) if (parallel && n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const IndividualSet retrieved = retriever.retrieve(batch[k]);
      out[k] = {evaluate(retrieved, problem), retrieved.count()};
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cel::detail
