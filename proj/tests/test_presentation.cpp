#include <gtest/gtest.h>

#include "beauville/errors.hpp"
#include "beauville/families.hpp"
#include "beauville/presentation.hpp"

using namespace beauville;

namespace {

std::vector<FamilyParams> sample_families() {
  return {Metacyclic{5, 2, 1},          Metacyclic{2, 3, 1},   Class2FiveTuple{2, 1, 1, 1, 0, 0},
          Class2FiveTuple{3, 2, 2, 1, 1, 0}, Class2Beauville{5, 3, 2, 2, 1}, SpecialClass2{5, 2, 1},
          TriangleQuotient{2},          TriangleQuotient{3},   Abelian{5, 1, 2}};
}

}  // namespace

TEST(Presentation, TextRoundTripForEveryFamily) {
  for (const auto& params : sample_families()) {
    auto pres = presentation_of(params);
    auto text = to_text(pres);
    auto back = parse_presentation(text);
    EXPECT_EQ(back, pres) << describe(params) << "\n" << text;
    EXPECT_EQ(to_text(back), text);
  }
}

TEST(Presentation, ParsesHandWrittenText) {
  auto pres = parse_presentation(R"(
    # quaternion group
    prime 2;
    gen x order 2;
    gen y order 2;
    gen c order 2;
    pow x = c;
    pow y = c;
    conj y^x = y c;
    pair x y;
    def c = [x, y];
  )");
  ASSERT_EQ(pres.size(), 3u);
  EXPECT_EQ(pres.prime, 2u);
  EXPECT_EQ(pres.gens, (std::vector<std::string>{"x", "y", "c"}));
  EXPECT_EQ(pres.power_rels[0], Word::gen(2));
  EXPECT_TRUE(pres.power_rels[2].empty());
  EXPECT_EQ(pres.conj_rels.at({0, 1}), Word::gen(1) * Word::gen(2));
  ASSERT_TRUE(pres.pair.has_value());
  EXPECT_EQ(*pres.pair, std::make_pair(0, 1));
  EXPECT_EQ(pres.defs.at(2), Word::commutator(Word::gen(0), Word::gen(1)));
}

TEST(Presentation, ExponentsAndNestedCommutators) {
  auto pres = parse_presentation(R"(
    prime 2;
    gen x order 4;
    gen y order 4;
    gen z order 2;
    gen t order 2;
    gen w order 2;
    pow x = ;
    pow y = ;
    conj y^x = y z;
    conj z^x = z t;
    conj z^y = z w;
    pair x y;
    def z = [y, x];
    def t = [y, x, x];
    def w = [y, x, y]^1;
  )");
  auto text = to_text(pres);
  EXPECT_EQ(parse_presentation(text), pres);

  auto p2 = parse_presentation("prime 3; gen a order 9; gen b order 3; pow a = b^-1; pow b = ;");
  EXPECT_EQ(p2.power_rels[0], Word::gen(1, -1));
  auto p3 = parse_presentation("prime 2; gen a order 2; gen b order 2; pow a = (b b)^2 b; pow b = ;");
  EXPECT_EQ(parse_presentation(to_text(p3)), p3);
}

TEST(Presentation, RejectsMalformedText) {
  const char* bad[] = {
      "gen x order 2;",                                      // no prime
      "prime 2; prime 2;",                                   // prime twice
      "prime 2; gen x order 3; pow x = ;",                   // not a power of p
      "prime 4; gen x order 4; pow x = ;",                   // not prime
      "prime 2; gen x order 2; pow x = y;",                  // unknown generator
      "prime 2; gen x order 2; gen y order 2; pow x = x;",   // power rel uses itself
      "prime 2; gen x order 2 pow x = ;",                    // missing semicolon
      "prime 2; gen x order 2; gen y order 2; conj x^y = x;",  // wrong index order
      "prime 2; gen x order 2; gen x order 2;",              // duplicate
      "prime 2; gen x order 2; pow x = [x;",                 // unbalanced
      "prime 2; gen x order 2; gen y order 2; pair x x;",    // degenerate pair
      "prime 2; gen x order 2; gen y order 2; def y = [y, x];",  // cyclic definition
      "prime 2; gen x order 2; @",                           // stray character
  };
  for (const char* text : bad) EXPECT_THROW(parse_presentation(text), ParseError) << text;
}

TEST(Presentation, ValidateChecksSyntacticInvariants) {
  PcPresentation p;
  p.prime = 3;
  int a = p.add_gen("a", 9);
  int b = p.add_gen("b", 3);
  p.set_power(a, Word::gen(b));
  EXPECT_NO_THROW(p.validate());

  auto bad_order = p;
  bad_order.rel_orders[1] = 6;
  EXPECT_THROW(bad_order.validate(), InvalidParams);

  auto bad_power = p;
  bad_power.power_rels[1] = Word::gen(a);
  EXPECT_THROW(bad_power.validate(), InvalidParams);

  auto bad_conj = p;
  bad_conj.conj_rels[{a, b}] = Word::gen(a);  // b^a may only use b and later
  EXPECT_THROW(bad_conj.validate(), InvalidParams);

  auto bad_prime = p;
  bad_prime.prime = 1;
  EXPECT_THROW(bad_prime.validate(), InvalidParams);
}

TEST(Presentation, IndexRange) {
  EXPECT_EQ(index_range(Word{}).second, -1);
  auto w = Word::gen(3) * Word::commutator(Word::gen(1), Word::gen(4));
  EXPECT_EQ(index_range(w), std::make_pair(1, 4));
}
