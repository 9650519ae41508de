#include <gtest/gtest.h>

#include "cel/error.hpp"
#include "cel/reasoner.hpp"
#include "cel/search_learner.hpp"
#include "cel/syntax.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using testing::fam;
using CE = ClassExpression;

class Search : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  Reasoner reasoner{family.kb, family.hierarchy};
  BoundProblem problem = bind(testing::married_female_problem(), family.kb);

  LearnResult learn(LearnerConfig cfg) const {
    return SearchLearner(family.kb, family.hierarchy, reasoner, cfg).learn(problem);
  }
};

TEST(ScoreNode, RootGetsStartBonus) {
  SearchNode root;
  root.quality = 0.6;
  root.horizontal_expansion = 1;
  EXPECT_DOUBLE_EQ(score_node(root, LearnerConfig{}), 0.7);
}

TEST(ScoreNode, ChildExample) {
  SearchNode child;
  child.expr = CE::named(Iri("http://x.org/A"));
  child.quality = 0.75;
  child.parent_quality = 0.6;
  child.horizontal_expansion = 1;
  child.refinement_count = 0;
  EXPECT_NEAR(score_node(child, LearnerConfig{}), 0.795, 1e-12);
  child.horizontal_expansion = 3;
  child.refinement_count = 10;
  EXPECT_NEAR(score_node(child, LearnerConfig{}), 0.795 - 0.2 - 0.001, 1e-12);
}

TEST(ScoreNode, OcelPreset) {
  LearnerConfig cfg;
  cfg.preset = SearchPreset::kOcel;
  SearchNode node;
  node.expr = CE::some(Iri("http://x.org/r"), CE::top());
  node.accuracy = 0.8;
  node.parent_accuracy = 0.6;
  node.horizontal_expansion = 3;
  EXPECT_NEAR(score_node(node, cfg), 0.8 - 0.02 * 3 + 0.3 * 0.2, 1e-12);
}

TEST(ScoreNode, EqualTermsGiveEqualScores) {
  SearchNode a, b;
  a.expr = CE::named(Iri("http://x.org/A"));
  b.expr = CE::named(Iri("http://x.org/B"));
  a.quality = b.quality = 0.5;
  a.parent_quality = b.parent_quality = 0.4;
  a.horizontal_expansion = b.horizontal_expansion = 2;
  EXPECT_EQ(score_node(a, LearnerConfig{}), score_node(b, LearnerConfig{}));
}

TEST_F(Search, SolvesMarriedFemale) {
  const LearnResult result = learn(LearnerConfig{});
  ASSERT_FALSE(result.hypotheses.empty());
  const Hypothesis& best = result.hypotheses.front();
  EXPECT_EQ(best.confusion.f1(), (Rational{1, 1}));
  const CE target = normalize(CE::intersection({CE::named(fam("Female")), CE::some(fam("married"), CE::top())}));
  EXPECT_EQ(reasoner.instances(best.expr), reasoner.instances(target)) << best.dl;
  EXPECT_EQ(testing::local_names(reasoner.instances(best.expr), family.kb),
            (std::vector<std::string>{"F10F172", "F10F174", "F10F179"}));
  EXPECT_TRUE(result.stats.threshold_reached);
  EXPECT_LE(result.hypotheses.size(), 10U);
}

TEST_F(Search, OcelPresetAlsoSolvesIt) {
  LearnerConfig cfg;
  cfg.preset = SearchPreset::kOcel;
  const LearnResult result = learn(cfg);
  ASSERT_FALSE(result.hypotheses.empty());
  EXPECT_EQ(result.hypotheses.front().confusion.f1(), (Rational{1, 1}));
}

TEST_F(Search, AllIndividualsPositiveYieldsTop) {
  LearningProblem lp;
  lp.positives = family.kb.individuals();
  const BoundProblem all = bind(lp, family.kb);
  const LearnResult result = SearchLearner(family.kb, family.hierarchy, reasoner, LearnerConfig{}).learn(all);
  ASSERT_FALSE(result.hypotheses.empty());
  EXPECT_TRUE(result.hypotheses.front().expr.is_top());
  EXPECT_EQ(result.hypotheses.front().confusion.f1(), (Rational{1, 1}));
  EXPECT_EQ(result.stats.nodes_expanded, 0U);
}

TEST_F(Search, UnreachableThresholdStopsAtIterationLimit) {
  LearnerConfig cfg;
  cfg.quality_threshold = 2.0;
  cfg.max_iterations = 50;
  const LearnResult result = learn(cfg);
  EXPECT_EQ(result.stats.nodes_expanded, 50U);
  EXPECT_FALSE(result.stats.threshold_reached);
}

TEST_F(Search, DeterministicAcrossRunsAndThreading) {
  LearnerConfig cfg;
  cfg.quality_threshold = 2.0;
  cfg.max_iterations = 200;
  const auto render_all = [](const LearnResult& r) {
    std::vector<std::string> out;
    for (const auto& h : r.hypotheses) out.push_back(h.manchester);
    return out;
  };
  const auto first = learn(cfg);
  EXPECT_EQ(render_all(first), render_all(learn(cfg)));
  cfg.parallel_evaluation = false;
  const auto serial = learn(cfg);
  EXPECT_EQ(render_all(first), render_all(serial));
  EXPECT_EQ(first.stats.best_quality_trace, serial.stats.best_quality_trace);
}

TEST_F(Search, BestQualityIsAnytimeMonotone) {
  LearnerConfig cfg;
  cfg.quality_threshold = 2.0;
  cfg.max_iterations = 300;
  const auto result = learn(cfg);
  ASSERT_EQ(result.stats.best_quality_trace.size(), 301U);
  for (std::size_t i = 1; i < result.stats.best_quality_trace.size(); ++i) {
    EXPECT_GE(result.stats.best_quality_trace[i], result.stats.best_quality_trace[i - 1]);
  }
}

TEST_F(Search, ReportedQualitiesMatchFreshEvaluation) {
  LearningProblem lp;
  lp.positives = {fam("F10M171"), fam("F10F179"), fam("F10F177")};
  lp.negatives = {fam("F10M180"), fam("F10F174")};
  const BoundProblem hard = bind(lp, family.kb);
  LearnerConfig cfg;
  cfg.max_iterations = 150;
  const auto result = SearchLearner(family.kb, family.hierarchy, reasoner, cfg).learn(hard);
  ASSERT_FALSE(result.hypotheses.empty());
  for (std::size_t i = 0; i < result.hypotheses.size(); ++i) {
    const Hypothesis& h = result.hypotheses[i];
    const QualityResult fresh = evaluate(reasoner, hard, h.expr);
    EXPECT_EQ(h.confusion, fresh) << h.dl;
    EXPECT_DOUBLE_EQ(h.quality, fresh.f1().to_double());
    EXPECT_EQ(h.retrieval_size, reasoner.instances(h.expr).count());
    EXPECT_EQ(h.length, expression_length(h.expr));
    EXPECT_EQ(h.dl, render(h.expr, Syntax::kDL));
    if (i > 0) {
      EXPECT_FALSE(ranks_before(h, result.hypotheses[i - 1]));
    }
  }
}

TEST_F(Search, AccuracyMeasureIsSelectable) {
  LearnerConfig cfg;
  cfg.quality_measure = QualityMeasure::kAccuracy;
  const auto result = learn(cfg);
  ASSERT_FALSE(result.hypotheses.empty());
  EXPECT_DOUBLE_EQ(result.hypotheses.front().quality, 1.0);
}

TEST(SearchEdgeCases, EmptyVocabularyYieldsTop) {
  const Iri a("http://x.org/a"), b("http://x.org/b");
  const auto loaded = testing::load_triples({{a, Iri(vocab::kRdfType), Iri(vocab::kOwlNamedIndividual)},
                                            {b, Iri(vocab::kRdfType), Iri(vocab::kOwlNamedIndividual)}});
  const Reasoner reasoner(loaded.kb, loaded.hierarchy);
  LearningProblem lp;
  lp.positives = {a};
  lp.negatives = {b};
  const auto result =
      SearchLearner(loaded.kb, loaded.hierarchy, reasoner, LearnerConfig{}).learn(bind(lp, loaded.kb));
  ASSERT_FALSE(result.hypotheses.empty());
  EXPECT_TRUE(result.hypotheses.front().expr.is_top());
  EXPECT_EQ(result.hypotheses.front().confusion.f1(), (Rational{2, 3}));
}

TEST(SearchEdgeCases, InvalidConfigIsRejected) {
  LearnerConfig cfg;
  cfg.max_iterations = 0;
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg = {};
  cfg.gain_bonus = -1;
  EXPECT_THROW(validate(cfg), ValidationError);
}

}  // namespace
}  // namespace cel
