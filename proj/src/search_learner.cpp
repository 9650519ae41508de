#include "cel/search_learner.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <limits>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "batch_eval.hpp"
#include "cel/error.hpp"
#include "cel/reasoner.hpp"
#include "cel/syntax.hpp"

namespace cel {

void validate(const LearnerConfig& cfg) {
  if (cfg.max_iterations < 1) throw ValidationError("max_iterations", "must be at least 1");
  if (cfg.max_hypothesis_length < 1) throw ValidationError("max_hypothesis_length", "must be at least 1");
  const std::pair<const char*, double> weights[] = {{"start_bonus", cfg.start_bonus},
                                                     {"gain_bonus", cfg.gain_bonus},
                                                     {"expansion_penalty", cfg.expansion_penalty},
                                                     {"refinement_penalty", cfg.refinement_penalty},
                                                     {"length_penalty", cfg.length_penalty}};
  for (const auto& [name, value] : weights) {
    if (value < 0) throw ValidationError(name, "must be non-negative");
  }
  if (!(cfg.max_runtime_seconds > 0)) throw ValidationError("max_runtime_seconds", "must be positive");
  if (cfg.top_k < 1) throw ValidationError("top_k", "must be at least 1");
}

double score_node(const SearchNode& node, const LearnerConfig& cfg) {
  const auto length = static_cast<double>(expression_length(node.expr));
  if (cfg.preset == SearchPreset::kOcel) {
    const double gain = node.parent_accuracy ? node.accuracy - *node.parent_accuracy : 0.0;
    return node.accuracy - cfg.length_penalty * length + cfg.gain_bonus * gain;
  }
  double h = node.quality;
  if (node.parent_quality) {
    h += cfg.gain_bonus * (node.quality - *node.parent_quality);
  } else {
    h += cfg.start_bonus;
  }
  h -= cfg.expansion_penalty * (static_cast<double>(node.horizontal_expansion) - length);
  h -= cfg.refinement_penalty * static_cast<double>(node.refinement_count);
  return h;
}

Hypothesis make_hypothesis(const ClassExpression& e, const QualityResult& confusion, double quality,
                           std::size_t retrieval_size) {
  return Hypothesis{e,
                    confusion,
                    quality,
                    retrieval_size,
                    expression_length(e),
                    render(e, Syntax::kDL),
                    render(e, Syntax::kManchester)};
}

bool ranks_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.quality != b.quality) return a.quality > b.quality;
  return std::tie(a.retrieval_size, a.length, a.manchester) < std::tie(b.retrieval_size, b.length, b.manchester);
}

SearchLearner::SearchLearner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy,
                             const InstanceRetriever& retriever, LearnerConfig config)
    : kb_(kb), hierarchy_(hierarchy), retriever_(retriever), config_(config) {
  validate(config_);
}

namespace {

using detail::Evaluation;
using detail::evaluate_batch;

struct OpenKey {
  double heuristic;
  std::size_t length;
  std::string manchester;
  std::size_t id;

  bool operator<(const OpenKey& o) const {
    if (heuristic != o.heuristic) return heuristic > o.heuristic;
    return std::tie(length, manchester, id) < std::tie(o.length, o.manchester, o.id);
  }
};

}  // namespace

LearnResult SearchLearner::learn(const BoundProblem& problem) const {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed_seconds = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  const auto out_of_time = [&] { return elapsed_seconds() > config_.max_runtime_seconds; };

  const RefinementOperator rho(kb_, hierarchy_,
                               RefinementConfig{config_.max_hypothesis_length, config_.use_negation,
                                                config_.use_universal, config_.use_cardinality,
                                                config_.max_cardinality_bound});

  LearnResult result;
  SearchStats& stats = result.stats;
  std::vector<SearchNode> nodes;
  std::vector<std::string> renderings;
  std::vector<bool> in_pool;
  std::unordered_map<std::string, std::size_t> by_key;
  std::set<OpenKey> open;
  double best = -1.0;

  const auto add_node = [&](ClassExpression expr, const Evaluation& ev, std::optional<std::size_t> parent,
                            bool pooled) {
    SearchNode node;
    node.expr = std::move(expr);
    node.confusion = ev.confusion;
    node.quality = score(ev.confusion, config_.quality_measure);
    node.accuracy = ev.confusion.accuracy().to_double();
    node.retrieval_size = ev.retrieval_size;
    node.horizontal_expansion = expression_length(node.expr);
    if (parent) {
      node.parent = parent;
      node.parent_quality = nodes[*parent].quality;
      node.parent_accuracy = nodes[*parent].accuracy;
      node.depth = nodes[*parent].depth + 1;
    }
    node.heuristic = score_node(node, config_);
    const std::size_t id = nodes.size();
    by_key.emplace(canonical_key(node.expr), id);
    renderings.push_back(render(node.expr, Syntax::kManchester));
    in_pool.push_back(pooled);
    if (pooled) best = std::max(best, node.quality);
    nodes.push_back(std::move(node));
    ++stats.expressions_evaluated;
    return id;
  };
  const auto open_key = [&](std::size_t id) {
    return OpenKey{nodes[id].heuristic, expression_length(nodes[id].expr), renderings[id], id};
  };

  const ClassExpression root = ClassExpression::top();
  const std::size_t root_id =
      add_node(root, evaluate_batch(retriever_, problem, {root}, false).front(), std::nullopt, true);
  open.insert(open_key(root_id));
  stats.best_quality_trace.push_back(best);

  while (best < config_.quality_threshold && stats.nodes_expanded < config_.max_iterations && !open.empty()) {
    if (out_of_time()) break;
    const std::size_t id = open.begin()->id;
    open.erase(open.begin());

    SearchNode& node = nodes[id];
    ++node.horizontal_expansion;
    const std::size_t budget = std::min(node.horizontal_expansion, config_.max_hypothesis_length);
    std::vector<ClassExpression> fresh;
    for (auto& r : rho.refine(node.expr, budget)) {
      if (!by_key.contains(canonical_key(r))) fresh.push_back(std::move(r));
    }
    node.refinement_count += fresh.size();

    const auto evaluations = evaluate_batch(retriever_, problem, fresh, config_.parallel_evaluation);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      const std::size_t child = add_node(fresh[i], evaluations[i], id, true);
      open.insert(open_key(child));
    }

    SearchNode& expanded = nodes[id];
    expanded.heuristic = score_node(expanded, config_);
    if (expanded.horizontal_expansion < config_.max_hypothesis_length) open.insert(open_key(id));
    ++stats.nodes_expanded;
    stats.best_quality_trace.push_back(best);
  }
  stats.threshold_reached = best >= config_.quality_threshold;

  if (stats.threshold_reached && config_.specialize_solutions) {
    // Best-first over refinements that keep solution quality, ordered by
    // retrieval size; every node that shrinks the smallest retrieval seen so
    // far joins the hypothesis pool.
    using Key = std::tuple<std::size_t, std::size_t, std::string, std::size_t>;
    std::set<Key> frontier;
    std::unordered_set<std::size_t> queued;
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    const auto push = [&](std::size_t id) {
      if (nodes[id].quality < config_.quality_threshold || !queued.insert(id).second) return;
      frontier.emplace(nodes[id].retrieval_size, expression_length(nodes[id].expr), renderings[id], id);
    };
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (in_pool[id] && nodes[id].quality >= config_.quality_threshold) {
        smallest = std::min(smallest, nodes[id].retrieval_size);
        push(id);
      }
    }
    std::size_t expansions = 0;
    while (!frontier.empty() && expansions < config_.specialization_budget && !out_of_time()) {
      const std::size_t current = std::get<3>(*frontier.begin());
      frontier.erase(frontier.begin());
      ++expansions;
      if (nodes[current].retrieval_size < smallest) {
        smallest = nodes[current].retrieval_size;
        in_pool[current] = true;
      }
      // Only covered positives remain; shrinking further loses one.
      if (smallest == nodes[current].confusion.tp && nodes[current].retrieval_size == smallest) break;
      const auto refinements = rho.refine(nodes[current].expr, config_.max_hypothesis_length);
      std::vector<ClassExpression> unseen;
      for (const auto& r : refinements) {
        if (!by_key.contains(canonical_key(r))) unseen.push_back(r);
      }
      const auto evaluations = evaluate_batch(retriever_, problem, unseen, config_.parallel_evaluation);
      for (std::size_t i = 0; i < unseen.size(); ++i) add_node(unseen[i], evaluations[i], current, false);
      for (const auto& r : refinements) push(by_key.at(canonical_key(r)));
    }
  }

  std::vector<std::size_t> pool;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (in_pool[id]) pool.push_back(id);
  }
  const auto ranked = [&](std::size_t a, std::size_t b) {
    if (nodes[a].quality != nodes[b].quality) return nodes[a].quality > nodes[b].quality;
    const std::size_t la = expression_length(nodes[a].expr);
    const std::size_t lb = expression_length(nodes[b].expr);
    return std::tie(nodes[a].retrieval_size, la, renderings[a]) < std::tie(nodes[b].retrieval_size, lb, renderings[b]);
  };
  const std::size_t keep = std::min(pool.size(), config_.top_k);
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(), ranked);
  for (std::size_t i = 0; i < keep; ++i) {
    const SearchNode& n = nodes[pool[i]];
    result.hypotheses.push_back(make_hypothesis(n.expr, n.confusion, n.quality, n.retrieval_size));
  }
  stats.wall_ms = elapsed_seconds() * 1000.0;
  return result;
}

}  // namespace cel
