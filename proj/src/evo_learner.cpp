#include "cel/evo_learner.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "batch_eval.hpp"
#include "cel/error.hpp"
#include "cel/reasoner.hpp"
#include "cel/syntax.hpp"

namespace cel {

void validate(const EvoConfig& cfg) {
  if (cfg.population_size < 2) throw ValidationError("population_size", "must be at least 2");
  if (cfg.tournament_size < 1) throw ValidationError("tournament_size", "must be at least 1");
  if (cfg.crossover_rate < 0 || cfg.crossover_rate > 1) throw ValidationError("crossover_rate", "must be in [0,1]");
  if (cfg.mutation_rate < 0 || cfg.mutation_rate > 1) throw ValidationError("mutation_rate", "must be in [0,1]");
  if (cfg.elitism_count >= cfg.population_size) {
    throw ValidationError("elitism_count", "must be smaller than population_size");
  }
  if (cfg.max_tree_length < 1) throw ValidationError("max_tree_length", "must be at least 1");
  if (cfg.parsimony < 0) throw ValidationError("parsimony", "must be non-negative");
  if (cfg.top_k < 1) throw ValidationError("top_k", "must be at least 1");
}

namespace {

using Path = std::vector<std::size_t>;

void collect_paths(const ClassExpression& e, Path& prefix, std::vector<Path>& out) {
  out.push_back(prefix);
  const auto ops = e.operands();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    prefix.push_back(i);
    collect_paths(ops[i], prefix, out);
    prefix.pop_back();
  }
}

std::vector<Path> subtree_paths(const ClassExpression& e) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(e, prefix, out);
  return out;
}

const ClassExpression& subtree_at(const ClassExpression& e, const Path& path, std::size_t depth = 0) {
  if (depth == path.size()) return e;
  return subtree_at(e.operands()[path[depth]], path, depth + 1);
}

ClassExpression with_operands(const ClassExpression& e, std::vector<ClassExpression> ops) {
  switch (e.kind()) {
    case ExprKind::kComplement:
      return ClassExpression::complement(std::move(ops.front()));
    case ExprKind::kIntersection:
      return ClassExpression::intersection(std::move(ops));
    case ExprKind::kUnion:
      return ClassExpression::union_of(std::move(ops));
    case ExprKind::kExistential:
      return ClassExpression::some(e.role(), std::move(ops.front()));
    case ExprKind::kUniversal:
      return ClassExpression::only(e.role(), std::move(ops.front()));
    case ExprKind::kMinCardinality:
      return ClassExpression::min(e.cardinality(), e.role(), std::move(ops.front()));
    default:
      return e;
  }
}

ClassExpression replace_at(const ClassExpression& e, const Path& path, const ClassExpression& replacement,
                           std::size_t depth = 0) {
  if (depth == path.size()) return replacement;
  std::vector<ClassExpression> ops(e.operands().begin(), e.operands().end());
  ops[path[depth]] = replace_at(ops[path[depth]], path, replacement, depth + 1);
  return with_operands(e, std::move(ops));
}

template <typename T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct Scored {
  double fitness = 0.0;
  std::size_t length = 0;
  std::string manchester;
};

bool fitter(const Scored& a, const Scored& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return std::tie(a.length, a.manchester) < std::tie(b.length, b.manchester);
}

}  // namespace

// State of one evolve() call.
class EvoLearner::Run {
 public:
  Run(const EvoLearner& owner, const BoundProblem& problem)
      : owner_(owner), kb_(owner.kb_), problem_(problem), rng_(owner.config_.random_seed) {
    positives_ = problem.positives.indices();
  }

  std::mt19937_64& rng() { return rng_; }

  // Named class asserted for x, or one of its strict superclasses.
  std::optional<ClassExpression> class_atom(std::size_t x) {
    const auto types = kb_.asserted_types(static_cast<IndividualIndex>(x));
    if (types.empty()) return std::nullopt;
    const std::vector<ClassIndex> options(types.begin(), types.end());
    ClassIndex c = pick(options, rng_);
    if (coin(rng_)) {
      std::vector<ClassIndex> supers;
      owner_.hierarchy_.superclass_row(c).for_each([&](std::size_t s) {
        if (s != c) supers.push_back(static_cast<ClassIndex>(s));
      });
      if (!supers.empty()) c = pick(supers, rng_);
    }
    return ClassExpression::named(kb_.classes()[c]);
  }

  // ∃r.C along an asserted edge r(x, y), with C = ⊤ or a class of y.
  std::optional<ClassExpression> role_atom(std::size_t x) {
    std::vector<std::pair<RoleIndex, IndividualIndex>> edges;
    for (RoleIndex r = 0; r < kb_.roles().size(); ++r) {
      for (IndividualIndex y : kb_.successors(r, static_cast<IndividualIndex>(x))) edges.emplace_back(r, y);
    }
    if (edges.empty()) return std::nullopt;
    const auto [r, y] = pick(edges, rng_);
    ClassExpression filler = ClassExpression::top();
    const auto types = kb_.asserted_types(y);
    if (!types.empty() && coin(rng_)) {
      const std::vector<ClassIndex> options(types.begin(), types.end());
      filler = ClassExpression::named(kb_.classes()[pick(options, rng_)]);
    }
    return ClassExpression::some(kb_.roles()[r], filler);
  }

  ClassExpression atom() {
    if (positives_.empty()) return ClassExpression::top();
    const std::size_t x = pick(positives_, rng_);
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng_);
    std::optional<ClassExpression> a;
    std::optional<ClassExpression> b;
    if (kind != 1) a = class_atom(x);
    if (kind != 0) b = role_atom(x);
    if (kind == 0 && !a) b = role_atom(x);
    if (kind == 1 && !b) a = class_atom(x);
    if (a && b) return normalize(ClassExpression::intersection({*a, *b}));
    if (a) return *a;
    if (b) return *b;
    return ClassExpression::top();
  }

  std::vector<ClassExpression> init_population() {
    std::vector<ClassExpression> population;
    population.reserve(owner_.config_.population_size);
    while (population.size() < owner_.config_.population_size) population.push_back(atom());
    return population;
  }

  std::vector<Scored> score_population(const std::vector<ClassExpression>& population) {
    std::vector<ClassExpression> pending;
    std::vector<std::string> pending_keys;
    std::vector<std::string> keys;
    keys.reserve(population.size());
    for (const auto& e : population) {
      keys.push_back(canonical_key(e));
      if (!cache_.contains(keys.back()) &&
          std::find(pending_keys.begin(), pending_keys.end(), keys.back()) == pending_keys.end()) {
        pending.push_back(e);
        pending_keys.push_back(keys.back());
      }
    }
    const auto evaluations =
        detail::evaluate_batch(owner_.retriever_, problem_, pending, owner_.config_.parallel_evaluation);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      Entry entry{pending[i], evaluations[i], {}};
      entry.scored = {owner_.fitness(evaluations[i].confusion, pending[i]), expression_length(pending[i]),
                      render(pending[i], Syntax::kManchester)};
      cache_.emplace(pending_keys[i], std::move(entry));
      ++evaluations_;
    }
    std::vector<Scored> out;
    out.reserve(population.size());
    for (const auto& k : keys) out.push_back(cache_.at(k).scored);
    best_key_ = best_key_.empty() ? keys.front() : best_key_;
    for (const auto& k : keys) {
      if (fitter(cache_.at(k).scored, cache_.at(best_key_).scored)) best_key_ = k;
    }
    return out;
  }

  std::size_t tournament(const std::vector<Scored>& scores) {
    std::size_t winner = std::uniform_int_distribution<std::size_t>(0, scores.size() - 1)(rng_);
    for (std::size_t i = 1; i < owner_.config_.tournament_size; ++i) {
      const std::size_t challenger = std::uniform_int_distribution<std::size_t>(0, scores.size() - 1)(rng_);
      if (fitter(scores[challenger], scores[winner]) ||
          (!fitter(scores[winner], scores[challenger]) && challenger < winner)) {
        winner = challenger;
      }
    }
    return winner;
  }

  bool fits(const ClassExpression& e) const { return expression_length(e) <= owner_.config_.max_tree_length; }

  std::pair<ClassExpression, ClassExpression> crossover(const ClassExpression& a, const ClassExpression& b) {
    const auto pa = subtree_paths(a);
    const auto pb = subtree_paths(b);
    const Path& cut_a = pick(pa, rng_);
    const Path& cut_b = pick(pb, rng_);
    ClassExpression child_a = normalize(replace_at(a, cut_a, subtree_at(b, cut_b)));
    ClassExpression child_b = normalize(replace_at(b, cut_b, subtree_at(a, cut_a)));
    return {fits(child_a) ? child_a : a, fits(child_b) ? child_b : b};
  }

  ClassExpression mutate(const ClassExpression& e) {
    const auto paths = subtree_paths(e);
    std::vector<Path> named, quantified, junctions;
    for (const auto& p : paths) {
      const auto& node = subtree_at(e, p);
      if (node.is(ExprKind::kNamed)) named.push_back(p);
      if (node.is(ExprKind::kExistential) || node.is(ExprKind::kUniversal)) quantified.push_back(p);
      if (node.is(ExprKind::kIntersection)) junctions.push_back(p);
    }
    std::vector<int> ops{2};
    if (!named.empty()) ops.push_back(0);
    if (!quantified.empty()) ops.push_back(1);
    if (!junctions.empty()) ops.push_back(3);
    std::sort(ops.begin(), ops.end());

    ClassExpression result = e;
    switch (pick(ops, rng_)) {
      case 0: {  // replace a named class by a neighbour in the hierarchy
        const Path& p = pick(named, rng_);
        const ClassIndex c = kb_.require_class(subtree_at(e, p).iri());
        std::vector<ClassIndex> neighbours;
        const auto& h = owner_.hierarchy_;
        for (ClassIndex s : h.direct_subclasses(c)) neighbours.push_back(s);
        for (ClassIndex s : h.direct_superclasses(c)) {
          neighbours.push_back(s);
          for (ClassIndex sibling : h.direct_subclasses(s)) {
            if (sibling != c) neighbours.push_back(sibling);
          }
        }
        if (h.direct_superclasses(c).empty()) {
          for (ClassIndex sibling : h.top_children()) {
            if (sibling != c) neighbours.push_back(sibling);
          }
        }
        std::sort(neighbours.begin(), neighbours.end());
        neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
        if (!neighbours.empty()) {
          result = replace_at(e, p, ClassExpression::named(kb_.classes()[pick(neighbours, rng_)]));
        }
        break;
      }
      case 1: {  // ∃ ↔ ∀
        const Path& p = pick(quantified, rng_);
        const auto& node = subtree_at(e, p);
        result = replace_at(e, p,
                            node.is(ExprKind::kExistential) ? ClassExpression::only(node.role(), node.filler())
                                                            : ClassExpression::some(node.role(), node.filler()));
        break;
      }
      case 2: {  // graft a fresh atom with ⊓
        const Path& p = pick(paths, rng_);
        result = replace_at(e, p, ClassExpression::intersection({subtree_at(e, p), atom()}));
        break;
      }
      case 3: {  // drop one conjunct
        const Path& p = pick(junctions, rng_);
        const auto& node = subtree_at(e, p);
        const std::size_t drop = std::uniform_int_distribution<std::size_t>(0, node.operands().size() - 1)(rng_);
        std::vector<ClassExpression> kept;
        for (std::size_t i = 0; i < node.operands().size(); ++i) {
          if (i != drop) kept.push_back(node.operands()[i]);
        }
        result = replace_at(e, p, kept.size() == 1 ? kept.front() : ClassExpression::intersection(std::move(kept)));
        break;
      }
    }
    result = normalize(result);
    return fits(result) ? result : e;
  }

  EvoResult finish(EvoStats stats) {
    std::vector<const Entry*> entries;
    for (const auto& [key, entry] : cache_) entries.push_back(&entry);
    std::sort(entries.begin(), entries.end(), [](const Entry* a, const Entry* b) { return fitter(a->scored, b->scored); });
    EvoResult result;
    const auto to_hypothesis = [&](const Entry& entry) {
      return make_hypothesis(entry.expr, entry.eval.confusion, entry.eval.confusion.f1().to_double(),
                             entry.eval.retrieval_size);
    };
    result.best = to_hypothesis(cache_.at(best_key_));
    for (std::size_t i = 0; i < entries.size() && i < owner_.config_.top_k; ++i) {
      result.ranked.push_back(to_hypothesis(*entries[i]));
    }
    stats.evaluations = evaluations_;
    result.stats = std::move(stats);
    return result;
  }

  double best_fitness() const { return cache_.at(best_key_).scored.fitness; }
  double best_f1() const { return cache_.at(best_key_).eval.confusion.f1().to_double(); }

 private:
  struct Entry {
    ClassExpression expr;
    detail::Evaluation eval;
    Scored scored;
  };

  const EvoLearner& owner_;
  const KnowledgeBase& kb_;
  const BoundProblem& problem_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> positives_;
  std::unordered_map<std::string, Entry> cache_;
  std::string best_key_;
  std::size_t evaluations_ = 0;
};

EvoLearner::EvoLearner(const KnowledgeBase& kb, const ClassHierarchy& hierarchy, const InstanceRetriever& retriever,
                       EvoConfig config)
    : kb_(kb), hierarchy_(hierarchy), retriever_(retriever), config_(config) {
  validate(config_);
}

double EvoLearner::fitness(const QualityResult& q, const ClassExpression& e) const {
  return q.f1().to_double() - config_.parsimony * static_cast<double>(expression_length(e));
}

std::vector<ClassExpression> EvoLearner::init_population(const BoundProblem& problem) const {
  Run run(*this, problem);
  return run.init_population();
}

EvoResult EvoLearner::evolve(const BoundProblem& problem) const {
  Run seeding(*this, problem);
  return evolve_from(seeding.init_population(), problem);
}

EvoResult EvoLearner::evolve_from(std::vector<ClassExpression> population, const BoundProblem& problem) const {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (population.empty()) throw ValidationError("population", "initial population is empty");
  for (auto& e : population) e = normalize(e);

  // Variation draws from a stream separate from seeding so that evolve() and
  // evolve_from(init_population()) behave identically.
  Run run(*this, problem);
  run.rng().discard(1'000'003);
  EvoStats stats;

  for (std::size_t generation = 0;; ++generation) {
    const std::vector<Scored> scores = run.score_population(population);
    stats.generations_run = generation;
    stats.best_fitness_trace.push_back(run.best_fitness());
    stats.best_f1_trace.push_back(run.best_f1());
    std::vector<std::string> keys;
    for (const auto& e : population) keys.push_back(canonical_key(e));
    stats.population_trace.push_back(std::move(keys));

    if (config_.stop_on_perfect && run.best_f1() >= 1.0) break;
    if (generation == config_.generations) break;

    std::vector<std::size_t> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitter(scores[a], scores[b]); });

    std::vector<ClassExpression> next;
    next.reserve(config_.population_size);
    for (std::size_t i = 0; i < config_.elitism_count && i < order.size(); ++i) next.push_back(population[order[i]]);
    while (next.size() < config_.population_size) {
      const ClassExpression& first = population[run.tournament(scores)];
      std::vector<ClassExpression> children;
      if (coin(run.rng(), config_.crossover_rate)) {
        const ClassExpression& second = population[run.tournament(scores)];
        auto [a, b] = run.crossover(first, second);
        children = {std::move(a), std::move(b)};
      } else {
        children = {first};
      }
      for (auto& child : children) {
        if (next.size() >= config_.population_size) break;
        if (coin(run.rng(), config_.mutation_rate)) child = run.mutate(child);
        next.push_back(std::move(child));
      }
    }
    population = std::move(next);
  }
  stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return run.finish(std::move(stats));
}

}  // namespace cel
