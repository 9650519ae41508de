#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cel/reasoner.hpp"
#include "cel/refinement.hpp"
#include "cel/syntax.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using testing::fam;
using CE = ClassExpression;

class Refinement : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  Reasoner reasoner{family.kb, family.hierarchy};
  RefinementOperator rho{family.kb, family.hierarchy, RefinementConfig{}};

  std::set<std::string> rendered(const std::vector<CE>& es) {
    std::set<std::string> out;
    for (const auto& e : es) out.insert(render(e, Syntax::kDL));
    return out;
  }
};

TEST_F(Refinement, TopRefinementsOnFamily) {
  const auto out = rendered(rho.refine(CE::top()));
  for (const char* expected : {"Person", "∃ married.⊤", "∀ married.⊤", "¬Mother", "¬Son"}) {
    EXPECT_TRUE(out.contains(expected)) << expected;
  }
  // Only one top child exists, so no root unions.
  for (const auto& s : out) EXPECT_EQ(s.find("⊔"), std::string::npos) << s;
}

TEST_F(Refinement, NamedClassGetsSubclassesAndConjunctions) {
  const auto out = rendered(rho.refine(CE::named(fam("Female"))));
  EXPECT_TRUE(out.contains("Female ⊓ (∃ married.⊤)"));
  EXPECT_TRUE(out.contains("Sister"));
  EXPECT_TRUE(out.contains("Daughter"));
  EXPECT_FALSE(out.contains("Female"));
}

TEST_F(Refinement, ComplementClimbsTheHierarchy) {
  const auto out = rendered(rho.refine(CE::complement(CE::named(fam("Sister")))));
  EXPECT_TRUE(out.contains("¬Female"));
  EXPECT_TRUE(out.contains("¬PersonWithASibling"));
  EXPECT_FALSE(out.contains("¬⊤"));
}

TEST_F(Refinement, BottomHasNoRefinements) { EXPECT_TRUE(rho.refine(CE::bottom()).empty()); }

TEST_F(Refinement, CardinalityRules) {
  RefinementConfig cfg;
  cfg.use_cardinality = true;
  cfg.max_cardinality_bound = 3;
  const RefinementOperator with_card(family.kb, family.hierarchy, cfg);
  EXPECT_TRUE(rendered(with_card.refine(CE::some(fam("married"), CE::top()))).contains("≥ 2 married.⊤"));
  EXPECT_TRUE(rendered(with_card.refine(CE::min(2, fam("married"), CE::top()))).contains("≥ 3 married.⊤"));
  EXPECT_FALSE(rendered(with_card.refine(CE::min(3, fam("married"), CE::top()))).contains("≥ 4 married.⊤"));
  EXPECT_FALSE(rendered(rho.refine(CE::some(fam("married"), CE::top()))).contains("≥ 2 married.⊤"));
}

TEST_F(Refinement, SwitchesDisableConstructors) {
  RefinementConfig cfg;
  cfg.use_negation = false;
  cfg.use_universal = false;
  const RefinementOperator plain(family.kb, family.hierarchy, cfg);
  for (const auto& s : rendered(plain.refine(CE::top()))) {
    EXPECT_EQ(s.find("¬"), std::string::npos) << s;
    EXPECT_EQ(s.find("∀"), std::string::npos) << s;
  }
}

TEST_F(Refinement, UnionsMayDropADisjunct) {
  const CE u = normalize(CE::union_of({CE::named(fam("Male")), CE::named(fam("Female"))}));
  const auto out = rendered(rho.refine(u));
  EXPECT_TRUE(out.contains("Male"));
  EXPECT_TRUE(out.contains("Female"));
}

TEST_F(Refinement, DownwardSoundBoundedAndDuplicateFree) {
  testing::ExpressionGenerator gen(family.kb, 31, 6);
  for (const CE& e : gen.take(100)) {
    const IndividualSet parent = reasoner.instances(e);
    const auto out = rho.refine(e, 8);
    std::set<std::string> keys;
    for (const CE& child : out) {
      ASSERT_TRUE(reasoner.instances(child).is_subset_of(parent))
          << render(child, Syntax::kDL) << " under " << render(e, Syntax::kDL);
      EXPECT_LE(expression_length(child), 8U);
      EXPECT_FALSE(child == e);
      EXPECT_EQ(normalize(child), child);
      EXPECT_TRUE(keys.insert(canonical_key(child)).second) << "duplicate " << render(child, Syntax::kDL);
    }
    EXPECT_EQ(rho.refine(e, 8).size(), out.size());
  }
}

TEST_F(Refinement, SoundOnSyntheticKbWithCardinality) {
  testing::SyntheticSpec spec;
  spec.individuals = 120;
  spec.edge_probability = 0.04;
  spec.seed = 3;
  const auto loaded = testing::load_triples(testing::synthetic_triples(spec));
  const Reasoner r(loaded.kb, loaded.hierarchy);
  RefinementConfig cfg;
  cfg.use_cardinality = true;
  const RefinementOperator op(loaded.kb, loaded.hierarchy, cfg);
  testing::ExpressionGenerator gen(loaded.kb, 32, 5);
  for (const CE& e : gen.take(60)) {
    const IndividualSet parent = r.instances(e);
    for (const CE& child : op.refine(e, 7)) {
      ASSERT_TRUE(r.instances(child).is_subset_of(parent)) << render(child, Syntax::kDL);
    }
  }
}

TEST_F(Refinement, ChainToTheMarriedFemaleTarget) {
  const CE target = normalize(CE::intersection({CE::named(fam("Female")), CE::some(fam("married"), CE::top())}));
  EXPECT_TRUE(refinement_chain_exists(rho, reasoner, target, 4));
  EXPECT_TRUE(refinement_chain_exists(rho, reasoner, CE::top(), 0));
}

TEST_F(Refinement, BottomUnreachableInOneStepWithoutNegation) {
  RefinementConfig cfg;
  cfg.use_negation = false;
  const RefinementOperator op(family.kb, family.hierarchy, cfg);
  // Mother has no instances, so depth 2 (⊤ → Person → Mother) reaches ∅.
  EXPECT_FALSE(refinement_chain_exists(op, reasoner, CE::bottom(), 1));
  EXPECT_TRUE(refinement_chain_exists(op, reasoner, CE::bottom(), 3));
}

}  // namespace
}  // namespace cel
