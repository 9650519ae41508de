#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cel/class_hierarchy.hpp"
#include "cel/evo_learner.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/learning_problem.hpp"
#include "cel/reasoner.hpp"
#include "cel/search_learner.hpp"
#include "json.hpp"

namespace cel {

enum class LearnerKind { kCeloe, kOcel, kEvo };

// "celoe", "ocel" or "evo"; throws ValidationError(field) otherwise.
LearnerKind parse_learner_kind(std::string_view name, const std::string& field = "learner");
std::string_view to_string(LearnerKind kind);

struct RunOptions {
  LearnerKind learner = LearnerKind::kCeloe;
  LearnerConfig search;
  EvoConfig evo;
  bool emit_sparql = false;
  bool verbalize = false;
};

// Sets one named option from a JSON value. Keys mirror the LearnerConfig and
// EvoConfig field names plus "seed", "learner", "emit_sparql" and
// "verbalize". Throws ValidationError with field "<prefix><key>".
void apply_option(RunOptions& options, const std::string& key, const nlohmann::json& value,
                  const std::string& field_prefix = "config.");
// Applies every member of a JSON object through apply_option.
void apply_options(RunOptions& options, const nlohmann::json& config, const std::string& field_prefix = "config.");
// Validates the learner-specific configuration; throws ValidationError.
void validate(const RunOptions& options);

struct LearningContext {
  const KnowledgeBase& kb;
  const ClassHierarchy& hierarchy;
  const InstanceRetriever& retriever;
};

struct RunReport {
  LearnerKind learner = LearnerKind::kCeloe;
  std::vector<Hypothesis> hypotheses;
  std::optional<std::size_t> nodes_expanded;
  std::optional<std::size_t> generations;
  double wall_ms = 0.0;
};

// Binds the problem (UnknownIriError for unknown examples) and runs the
// selected learner.
RunReport run_learner(const LearningContext& context, const LearningProblem& problem, const RunOptions& options);

// The "hypotheses" array: manchester, dl, f1, accuracy, length and, when
// requested, sparql and verbalization.
nlohmann::ordered_json hypotheses_json(const RunReport& report, const LearningContext& context,
                                       const RunOptions& options);
// {"hypotheses": [...], "stats": {...}}
nlohmann::ordered_json report_json(const RunReport& report, const LearningContext& context, const RunOptions& options);
std::string report_text(const RunReport& report, const LearningContext& context, const RunOptions& options);

}  // namespace cel
