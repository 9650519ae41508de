#include <gtest/gtest.h>

#include "cel/class_expression.hpp"
#include "cel/error.hpp"
#include "cel/syntax.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using testing::fam;
using CE = ClassExpression;

class Expressions : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  CE female = CE::named(fam("Female"));
  CE male = CE::named(fam("Male"));
  Iri married = fam("married");
};

TEST_F(Expressions, LengthCountsSymbols) {
  EXPECT_EQ(expression_length(female), 1U);
  EXPECT_EQ(expression_length(CE::top()), 1U);
  EXPECT_EQ(expression_length(CE::complement(male)), 2U);
  EXPECT_EQ(expression_length(CE::some(married, CE::top())), 3U);
  EXPECT_EQ(expression_length(CE::intersection({female, CE::some(married, CE::top())})), 5U);
  EXPECT_EQ(expression_length(CE::union_of({female, male, CE::top()})), 5U);
  EXPECT_EQ(expression_length(CE::min(2, married, female)), 3U);
}

TEST_F(Expressions, RendersDlAndManchester) {
  const CE e = normalize(CE::intersection({CE::some(married, CE::top()), female}));
  EXPECT_EQ(render(e, Syntax::kDL), "Female ⊓ (∃ married.⊤)");
  EXPECT_EQ(render(e, Syntax::kManchester), "Female and (married some Thing)");
  EXPECT_EQ(render(CE::complement(male), Syntax::kDL), "¬Male");
  EXPECT_EQ(render(CE::complement(male), Syntax::kManchester), "not Male");
  EXPECT_EQ(render(CE::only(married, female), Syntax::kDL), "∀ married.Female");
  EXPECT_EQ(render(CE::min(2, married, CE::top()), Syntax::kDL), "≥ 2 married.⊤");
  EXPECT_EQ(render(CE::min(2, married, CE::top()), Syntax::kManchester), "married min 2 Thing");
  EXPECT_EQ(render(CE::bottom(), Syntax::kManchester), "Nothing");
  EXPECT_EQ(render(female, Syntax::kDL, IriStyle::kFull), "<http://www.benchmark.org/family#Female>");
}

TEST_F(Expressions, NormalizationPushesNegationInward) {
  const CE e = CE::complement(CE::intersection({female, CE::some(married, male)}));
  EXPECT_EQ(render(normalize(e), Syntax::kDL), "¬Female ⊔ (∀ married.(¬Male))");
  EXPECT_EQ(normalize(CE::complement(CE::complement(female))), female);
  EXPECT_EQ(normalize(CE::complement(CE::top())), CE::bottom());
  EXPECT_EQ(normalize(CE::min(1, married, female)), CE::some(married, female));
  const CE not_min2 = normalize(CE::complement(CE::min(2, married, female)));
  EXPECT_TRUE(not_min2.is(ExprKind::kComplement));
}

TEST_F(Expressions, NormalizationFlattensAndAbsorbs) {
  const CE nested = CE::intersection({female, CE::intersection({CE::top(), female, male})});
  EXPECT_EQ(render(normalize(nested), Syntax::kDL), "Female ⊓ Male");
  EXPECT_EQ(normalize(CE::union_of({female, CE::top()})), CE::top());
  EXPECT_EQ(normalize(CE::intersection({female, CE::bottom()})), CE::bottom());
  EXPECT_EQ(normalize(CE::union_of({female, female})), female);
  EXPECT_EQ(normalize(CE::intersection({male, female})), normalize(CE::intersection({female, male})));
}

TEST_F(Expressions, NormalizationFoldsEmptyFillers) {
  EXPECT_EQ(normalize(CE::some(married, CE::bottom())), CE::bottom());
  EXPECT_EQ(normalize(CE::min(3, married, CE::intersection({female, CE::bottom()}))), CE::bottom());
  EXPECT_EQ(normalize(CE::complement(CE::only(married, CE::top()))), CE::bottom());
  EXPECT_EQ(normalize(CE::complement(CE::min(2, married, CE::bottom()))), CE::top());
  EXPECT_EQ(normalize(CE::only(married, CE::top())), CE::only(married, CE::top()));
  EXPECT_EQ(normalize(CE::only(married, CE::bottom())), CE::only(married, CE::bottom()));
}

TEST_F(Expressions, FactoriesRejectDegenerateInput) {
  EXPECT_THROW(CE::intersection({female}), std::invalid_argument);
  EXPECT_THROW(CE::union_of({}), std::invalid_argument);
  EXPECT_THROW(CE::min(0, married, female), std::invalid_argument);
}

TEST_F(Expressions, ParsesManchester) {
  const CE e = parse_expression("Female and (married some Thing)", family.kb);
  EXPECT_EQ(e, normalize(CE::intersection({female, CE::some(married, CE::top())})));
  EXPECT_EQ(parse_expression("not Male", family.kb), CE::complement(male));
  EXPECT_EQ(parse_expression("married only (not Male or Nothing)", family.kb),
            CE::only(married, CE::complement(male)));
  EXPECT_EQ(parse_expression("married min 2 Female", family.kb), CE::min(2, married, female));
  EXPECT_EQ(parse_expression("<http://www.benchmark.org/family#Female>", family.kb), female);
}

TEST_F(Expressions, ParseErrors) {
  EXPECT_THROW(parse_expression("Robot", family.kb), UnknownIriError);
  EXPECT_THROW(parse_expression("married some Robot", family.kb), UnknownIriError);
  try {
    parse_expression("Female and and Male", family.kb);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 12U);
  }
  EXPECT_THROW(parse_expression("(Female", family.kb), ParseError);
  EXPECT_THROW(parse_expression("married min 0 Female", family.kb), Error);
  EXPECT_THROW(parse_expression("", family.kb), ParseError);
}

TEST_F(Expressions, NormalizeIsIdempotent) {
  testing::ExpressionGenerator gen(family.kb, 11);
  for (const CE& e : gen.take(300)) {
    EXPECT_EQ(normalize(e), e) << render(e, Syntax::kDL);
  }
}

TEST_F(Expressions, ParseOfRenderIsIdentityOnNormalForms) {
  testing::ExpressionGenerator gen(family.kb, 12);
  for (const CE& e : gen.take(300)) {
    const std::string text = render(e, Syntax::kManchester);
    EXPECT_EQ(parse_expression(text, family.kb), e) << text;
    EXPECT_EQ(parse_expression(render(e, Syntax::kManchester, IriStyle::kFull), family.kb), e) << text;
  }
}

TEST_F(Expressions, CanonicalKeyDistinguishesStructure) {
  testing::ExpressionGenerator gen(family.kb, 13);
  const auto sample = gen.take(200);
  for (const CE& a : sample) {
    for (const CE& b : sample) {
      EXPECT_EQ(canonical_key(a) == canonical_key(b), a == b);
    }
  }
}

}  // namespace
}  // namespace cel
