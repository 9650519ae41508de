#include "cel/runner.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "cel/error.hpp"
#include "cel/sparql_compiler.hpp"
#include "cel/verbalizer.hpp"

namespace cel {

LearnerKind parse_learner_kind(std::string_view name, const std::string& field) {
  if (name == "celoe") return LearnerKind::kCeloe;
  if (name == "ocel") return LearnerKind::kOcel;
  if (name == "evo") return LearnerKind::kEvo;
  throw ValidationError(field, "unknown learner '" + std::string(name) + "' (expected celoe, ocel or evo)");
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kCeloe:
      return "celoe";
    case LearnerKind::kOcel:
      return "ocel";
    case LearnerKind::kEvo:
      return "evo";
  }
  return "celoe";
}

namespace {

using Setter = std::function<void(RunOptions&, const nlohmann::json&, const std::string&)>;

double as_real(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError(field, "expected a number");
  return v.get<double>();
}

std::uint64_t as_count(const nlohmann::json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ValidationError(field, "must not be negative");
  throw ValidationError(field, "expected a non-negative integer");
}

bool as_bool(const nlohmann::json& v, const std::string& field) {
  if (!v.is_boolean()) throw ValidationError(field, "expected true or false");
  return v.get<bool>();
}

template <typename T>
Setter real(T RunOptions::*group, double T::*member) {
  return [=](RunOptions& o, const nlohmann::json& v, const std::string& f) { o.*group.*member = as_real(v, f); };
}

template <typename T, typename U>
Setter count(T RunOptions::*group, U T::*member) {
  return [=](RunOptions& o, const nlohmann::json& v, const std::string& f) {
    o.*group.*member = static_cast<U>(as_count(v, f));
  };
}

template <typename T>
Setter flag(T RunOptions::*group, bool T::*member) {
  return [=](RunOptions& o, const nlohmann::json& v, const std::string& f) { o.*group.*member = as_bool(v, f); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    const auto s = &RunOptions::search;
    const auto e = &RunOptions::evo;
    t["max_runtime_seconds"] = real(s, &LearnerConfig::max_runtime_seconds);
    t["max_iterations"] = count(s, &LearnerConfig::max_iterations);
    t["quality_threshold"] = real(s, &LearnerConfig::quality_threshold);
    t["max_hypothesis_length"] = count(s, &LearnerConfig::max_hypothesis_length);
    t["start_bonus"] = real(s, &LearnerConfig::start_bonus);
    t["gain_bonus"] = real(s, &LearnerConfig::gain_bonus);
    t["expansion_penalty"] = real(s, &LearnerConfig::expansion_penalty);
    t["refinement_penalty"] = real(s, &LearnerConfig::refinement_penalty);
    t["length_penalty"] = real(s, &LearnerConfig::length_penalty);
    t["specialize_solutions"] = flag(s, &LearnerConfig::specialize_solutions);
    t["specialization_budget"] = count(s, &LearnerConfig::specialization_budget);
    t["use_negation"] = flag(s, &LearnerConfig::use_negation);
    t["use_universal"] = flag(s, &LearnerConfig::use_universal);
    t["use_cardinality"] = flag(s, &LearnerConfig::use_cardinality);
    t["max_cardinality_bound"] = count(s, &LearnerConfig::max_cardinality_bound);
    t["population_size"] = count(e, &EvoConfig::population_size);
    t["generations"] = count(e, &EvoConfig::generations);
    t["tournament_size"] = count(e, &EvoConfig::tournament_size);
    t["crossover_rate"] = real(e, &EvoConfig::crossover_rate);
    t["mutation_rate"] = real(e, &EvoConfig::mutation_rate);
    t["max_tree_length"] = count(e, &EvoConfig::max_tree_length);
    t["elitism_count"] = count(e, &EvoConfig::elitism_count);
    t["parsimony"] = real(e, &EvoConfig::parsimony);
    t["top_k"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) {
      o.search.top_k = o.evo.top_k = static_cast<std::size_t>(as_count(v, f));
    };
    t["parallel_evaluation"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) {
      o.search.parallel_evaluation = o.evo.parallel_evaluation = as_bool(v, f);
    };
    t["seed"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) {
      o.search.random_seed = o.evo.random_seed = as_count(v, f);
    };
    t["random_seed"] = t["seed"];
    t["quality_measure"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) {
      if (v == "f1") {
        o.search.quality_measure = QualityMeasure::kF1;
      } else if (v == "accuracy") {
        o.search.quality_measure = QualityMeasure::kAccuracy;
      } else {
        throw ValidationError(f, "expected \"f1\" or \"accuracy\"");
      }
    };
    t["learner"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) {
      if (!v.is_string()) throw ValidationError(f, "expected a string");
      o.learner = parse_learner_kind(v.get<std::string>(), f);
    };
    t["emit_sparql"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) { o.emit_sparql = as_bool(v, f); };
    t["verbalize"] = [](RunOptions& o, const nlohmann::json& v, const std::string& f) { o.verbalize = as_bool(v, f); };
    return t;
  }();
  return table;
}

std::string format_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  return buffer;
}

}  // namespace

void apply_option(RunOptions& options, const std::string& key, const nlohmann::json& value,
                  const std::string& field_prefix) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ValidationError(field_prefix + key, "unknown option");
  it->second(options, value, field_prefix + key);
}

void apply_options(RunOptions& options, const nlohmann::json& config, const std::string& field_prefix) {
  if (!config.is_object()) {
    const std::string field = field_prefix.empty() ? "config" : field_prefix.substr(0, field_prefix.size() - 1);
    throw ValidationError(field, "expected an object");
  }
  for (const auto& [key, value] : config.items()) apply_option(options, key, value, field_prefix);
}

void validate(const RunOptions& options) {
  try {
    if (options.learner == LearnerKind::kEvo) {
      validate(options.evo);
    } else {
      validate(options.search);
    }
  } catch (const ValidationError& e) {
    throw ValidationError("config." + e.field(), e.message());
  }
}

RunReport run_learner(const LearningContext& context, const LearningProblem& problem, const RunOptions& options) {
  validate(problem);
  validate(options);
  const BoundProblem bound = bind(problem, context.kb);
  RunReport report;
  report.learner = options.learner;
  if (options.learner == LearnerKind::kEvo) {
    const EvoLearner learner(context.kb, context.hierarchy, context.retriever, options.evo);
    EvoResult result = learner.evolve(bound);
    report.hypotheses = std::move(result.ranked);
    report.generations = result.stats.generations_run;
    report.wall_ms = result.stats.wall_ms;
  } else {
    LearnerConfig cfg = options.search;
    cfg.preset = options.learner == LearnerKind::kOcel ? SearchPreset::kOcel : SearchPreset::kCeloe;
    const SearchLearner learner(context.kb, context.hierarchy, context.retriever, cfg);
    LearnResult result = learner.learn(bound);
    report.hypotheses = std::move(result.hypotheses);
    report.nodes_expanded = result.stats.nodes_expanded;
    report.wall_ms = result.stats.wall_ms;
  }
  return report;
}

nlohmann::ordered_json hypotheses_json(const RunReport& report, const LearningContext& context,
                                       const RunOptions& options) {
  const HierarchyView view{context.kb, context.hierarchy};
  const LabelMap labels = options.verbalize ? LabelMap(context.kb) : LabelMap();
  auto out = nlohmann::ordered_json::array();
  for (const auto& h : report.hypotheses) {
    nlohmann::ordered_json entry;
    entry["manchester"] = h.manchester;
    entry["dl"] = h.dl;
    entry["f1"] = h.confusion.f1().to_double();
    entry["accuracy"] = h.confusion.accuracy().to_double();
    entry["length"] = h.length;
    if (options.emit_sparql) entry["sparql"] = compile(h.expr, &view, true).query_text;
    if (options.verbalize) entry["verbalization"] = verbalize(h.expr, labels);
    out.push_back(std::move(entry));
  }
  return out;
}

nlohmann::ordered_json report_json(const RunReport& report, const LearningContext& context, const RunOptions& options) {
  nlohmann::ordered_json doc;
  doc["hypotheses"] = hypotheses_json(report, context, options);
  auto& stats = doc["stats"];
  stats["learner"] = std::string(to_string(report.learner));
  if (report.nodes_expanded) stats["nodes_expanded"] = *report.nodes_expanded;
  if (report.generations) stats["generations"] = *report.generations;
  stats["wall_ms"] = report.wall_ms;
  stats["semantics"] = "closed-world";
  return doc;
}

std::string report_text(const RunReport& report, const LearningContext& context, const RunOptions& options) {
  const HierarchyView view{context.kb, context.hierarchy};
  const LabelMap labels = options.verbalize ? LabelMap(context.kb) : LabelMap();
  std::ostringstream out;
  std::size_t rank = 1;
  for (const auto& h : report.hypotheses) {
    out << rank++ << ". " << h.manchester << "\n";
    out << "   DL:       " << h.dl << "\n";
    out << "   F1:       " << format_real(h.confusion.f1().to_double()) << "   accuracy: "
        << format_real(h.confusion.accuracy().to_double()) << "   length: " << h.length << "\n";
    if (options.emit_sparql) {
      std::string query = compile(h.expr, &view, true).query_text;
      std::string indented;
      for (char c : query) {
        indented += c;
        if (c == '\n') indented += "             ";
      }
      out << "   SPARQL:   " << indented << "\n";
    }
    if (options.verbalize) out << "   English:  " << verbalize(h.expr, labels) << "\n";
  }
  out << "learner " << to_string(report.learner);
  if (report.nodes_expanded) out << ", " << *report.nodes_expanded << " nodes expanded";
  if (report.generations) out << ", " << *report.generations << " generations";
  out << ", " << format_real(report.wall_ms) << " ms (closed-world semantics)\n";
  return out.str();
}

}  // namespace cel
