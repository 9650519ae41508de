#include <gtest/gtest.h>

#include "cel/verbalizer.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using testing::fam;
using CE = ClassExpression;

class Verbalize : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  LabelMap labels{family.kb};

  std::string v(const CE& e) { return verbalize(normalize(e), labels); }
};

TEST_F(Verbalize, FixtureExamples) {
  EXPECT_EQ(v(CE::intersection({CE::named(fam("Female")), CE::some(fam("married"), CE::top())})),
            "a female that is married to something");
  EXPECT_EQ(v(CE::top()), "anything");
  EXPECT_EQ(v(CE::bottom()), "nothing");
  EXPECT_EQ(v(CE::complement(CE::named(fam("Male")))), "anything that is not a male");
}

TEST_F(Verbalize, ConnectivesAndRestrictions) {
  const Iri has_child("http://x.org/hasChild");
  EXPECT_EQ(v(CE::union_of({CE::named(fam("Male")), CE::named(fam("Female"))})), "a female or a male");
  EXPECT_EQ(v(CE::intersection({CE::named(fam("Male")), CE::named(fam("Parent"))})), "a male that is also a parent");
  EXPECT_EQ(v(CE::some(has_child, CE::named(fam("Female")))), "anything that has childs a female");
  EXPECT_EQ(v(CE::only(has_child, CE::named(fam("Male")))), "anything that has childs only a male");
  EXPECT_EQ(v(CE::min(2, has_child, CE::named(fam("Male")))), "anything that has childs at least 2 male");
  EXPECT_EQ(v(CE::min(2, has_child, CE::top())), "anything that has childs at least 2 things");
  EXPECT_EQ(v(CE::some(fam("married"), CE::named(fam("Male")))), "anything that is married to a male");
  EXPECT_EQ(v(CE::only(fam("married"), CE::named(fam("Male")))), "anything that is married only to a male");
}

TEST(Labels, DefaultsSplitLocalNames) {
  EXPECT_EQ(default_label(Iri("http://x.org/PersonWithASibling")), "person with a sibling");
  EXPECT_EQ(default_label(Iri("http://x.org/has_child")), "has child");
  EXPECT_EQ(default_label(Iri("http://x.org/ns#Female")), "female");
  EXPECT_EQ(default_label(Iri("http://x.org/hasHTTPServer")), "has http server");
}

TEST(Labels, ExplicitLabelsWin) {
  const auto loaded = testing::load_triples(parse_ntriples(
      "<http://x.org/A> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .\n"
      "<http://x.org/A> <http://www.w3.org/2000/01/rdf-schema#label> \"Aardvark\"@de .\n"
      "<http://x.org/A> <http://www.w3.org/2000/01/rdf-schema#label> \"anteater\"@en .\n"
      "<http://x.org/B> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .\n"));
  LabelMap labels(loaded.kb);
  EXPECT_EQ(labels.label(Iri("http://x.org/A")), "anteater");
  EXPECT_EQ(labels.label(Iri("http://x.org/B")), "b");
  labels.set(Iri("http://x.org/B"), "badger");
  EXPECT_EQ(verbalize(CE::named(Iri("http://x.org/B")), labels), "a badger");
}

TEST_F(Verbalize, TotalAndDeterministicOnRandomExpressions) {
  testing::ExpressionGenerator gen(family.kb, 4242, 9);
  for (const CE& e : gen.take(500)) {
    std::string first;
    ASSERT_NO_THROW(first = verbalize(e, labels));
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, verbalize(e, labels));
    EXPECT_EQ(first.find("  "), std::string::npos) << first;
  }
}

}  // namespace
}  // namespace cel
