#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "beauville/errors.hpp"
#include "beauville/families.hpp"
#include "beauville/pcgroup.hpp"
#include "oracles.hpp"

using namespace beauville;

namespace {

// Generator ranks of the triangle quotient, in pc order x, y, z, t, w.
struct Tq {
  GroupTable G;
  Rank x, y, z, t, w;
  explicit Tq(unsigned e)
      : G(construct(TriangleQuotient{e})),
        x(G.gen_rank(0)),
        y(G.gen_rank(1)),
        z(G.gen_rank(2)),
        t(G.gen_rank(3)),
        w(G.gen_rank(4)) {}
};

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// Lower central series length by closure of commutator sets.
unsigned class_by_commutators(const GroupTable& G) {
  std::vector<Rank> gamma;
  for (Rank r = 0; r < G.order(); ++r) gamma.push_back(r);
  unsigned c = 0;
  while (gamma.size() > 1) {
    std::vector<Rank> comms;
    for (Rank a : gamma)
      for (Rank g = 0; g < G.order(); ++g) comms.push_back(G.comm(a, g));
    gamma = oracle::closure(G, comms).members();
    ++c;
  }
  return c;
}

}  // namespace

TEST(BuildGroup, OrdersOfStandardGroups) {
  EXPECT_EQ(construct(TriangleQuotient{2}).order(), 128u);
  EXPECT_EQ(construct(Metacyclic{5, 2, 1}).order(), 625u);
  auto trivial = build_group(PcPresentation{});
  EXPECT_EQ(trivial.order(), 1u);
  EXPECT_TRUE(trivial.identity().is_identity());
  EXPECT_EQ(trivial.exponent(), 1u);
}

TEST(BuildGroup, OrderIsProductOfRelativeOrders) {
  for (FamilyParams params : {FamilyParams{TriangleQuotient{3}}, FamilyParams{Class2Beauville{5, 3, 2, 2, 1}},
                              FamilyParams{Class2FiveTuple{3, 2, 1, 1, 0, 1}}, FamilyParams{SpecialClass2{7, 1, 1}}}) {
    auto G = construct(params);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < G.num_gens(); ++i) prod *= G.rel_order(i);
    EXPECT_EQ(G.order(), prod) << describe(params);
  }
}

TEST(BuildGroup, DetectsCollapsingPresentation) {
  // a^2 = b must commute with a, so b^a = b c forces c = 1.
  auto pres = parse_presentation(
      "prime 2; gen a order 2; gen b order 2; gen c order 2;"
      "pow a = b; pow b = ; pow c = ; conj b^a = b c;");
  EXPECT_THROW(build_group(pres), InconsistentPresentation);

  // Conjugation by a is not an automorphism of <b> here: b^a = b^2 on C_4.
  auto pres2 = parse_presentation(
      "prime 2; gen a order 2; gen b order 2; gen c order 2;"
      "pow a = ; pow b = c; pow c = ; conj b^a = c;");
  EXPECT_THROW(build_group(pres2), InconsistentPresentation);
}

TEST(BuildGroup, SizeCap) {
  BuildOptions opts;
  opts.size_cap = 100;
  EXPECT_THROW(construct(Metacyclic{5, 2, 1}, opts), TooLarge);
  opts.allow_oversize = true;
  auto G = construct(Metacyclic{5, 2, 1}, opts);
  EXPECT_FALSE(G.tabled());
  EXPECT_EQ(G.order(), 625u);
  // Arithmetic still works by collection.
  auto b = G.generator(0), a = G.generator(1);
  EXPECT_EQ(G.conjugate(a, b), G.power_of(a, 6));
  EXPECT_EQ(G.order_of(a), 25u);
}

TEST(Multiply, TriangleQuotientRewritesYX) {
  Tq T(2);
  // [y, x] = z gives y x = x y z.
  EXPECT_EQ(T.G.mul(T.y, T.x), T.G.mul(T.G.mul(T.x, T.y), T.z));
  auto yx = T.G.multiply(T.G.generator(1), T.G.generator(0));
  EXPECT_EQ(yx.exps, (std::vector<std::uint64_t>{1, 1, 1, 0, 0}));
}

TEST(Multiply, IdentityIsNeutral) {
  auto G = construct(Class2Beauville{5, 3, 2, 2, 1});
  std::mt19937_64 rng(1);
  for (int s = 0; s < 200; ++s) {
    Rank u = rng() % G.order();
    EXPECT_EQ(G.mul(u, 0), u);
    EXPECT_EQ(G.mul(0, u), u);
  }
}

TEST(Multiply, MetacyclicMatchesAffineModel) {
  auto G = construct(Metacyclic{5, 2, 1});
  oracle::AffineMetacyclic model{25, 6};
  // Normal form b^beta a^alpha: digit 0 is beta, digit 1 is alpha.
  auto coords = [&](Rank r) { return std::make_pair(G.digit(r, 0), G.digit(r, 1)); };
  for (Rank u = 0; u < G.order(); ++u)
    for (Rank v = 0; v < G.order(); ++v) ASSERT_EQ(coords(G.mul(u, v)), model.mul(coords(u), coords(v)));
  // b a is already collected; a b = b a^6.
  Rank b = G.gen_rank(0), a = G.gen_rank(1);
  EXPECT_EQ(coords(G.mul(b, a)), std::make_pair(std::uint64_t{1}, std::uint64_t{1}));
  EXPECT_EQ(coords(G.mul(a, b)), std::make_pair(std::uint64_t{1}, std::uint64_t{6}));
  EXPECT_EQ(G.mul(b, a), G.mul(G.pow(a, 21), b));
}

TEST(Multiply, CollectionAgreesWithTables) {
  for (FamilyParams params : {FamilyParams{TriangleQuotient{3}}, FamilyParams{Class2Beauville{5, 3, 2, 2, 1}},
                              FamilyParams{Metacyclic{3, 3, 1}}, FamilyParams{Class2FiveTuple{2, 3, 2, 2, 1, 2}}}) {
    auto G = construct(params);
    std::mt19937_64 rng(7);
    for (int s = 0; s < 2000; ++s) {
      auto u = G.unrank(rng() % G.order()), v = G.unrank(rng() % G.order());
      ASSERT_EQ(G.multiply_by_collection(u, v), G.multiply(u, v)) << describe(params);
      ASSERT_EQ(G.rank(G.multiply(u, v)), G.mul(G.rank(u), G.rank(v)));
    }
  }
}

TEST(Multiply, AssociativeOnGeneratorsExhaustively) {
  for (FamilyParams params : {FamilyParams{TriangleQuotient{2}}, FamilyParams{Metacyclic{5, 2, 1}},
                              FamilyParams{Class2FiveTuple{2, 2, 2, 1, 1, 0}}}) {
    auto G = construct(params);
    for (std::size_t i = 0; i < G.num_gens(); ++i) {
      Rank g = G.gen_rank(i);
      for (Rank x = 0; x < G.order(); ++x)
        for (Rank y = 0; y < G.order(); ++y) ASSERT_EQ(G.mul(G.mul(g, x), y), G.mul(g, G.mul(x, y)));
    }
  }
}

TEST(Multiply, AssociativeOnRandomTriples) {
  auto G = construct(TriangleQuotient{4});  // order 2^17
  std::mt19937_64 rng(3);
  for (int s = 0; s < 100000; ++s) {
    Rank a = rng() % G.order(), b = rng() % G.order(), c = rng() % G.order();
    ASSERT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)));
  }
}

TEST(Commutator, ConventionMatchesTriangleRelations) {
  for (unsigned e : {2u, 3u}) {
    Tq T(e);
    EXPECT_EQ(T.G.comm(T.y, T.x), T.z);
    EXPECT_EQ(T.G.comm(T.z, T.x), T.t);
    EXPECT_EQ(T.G.comm(T.z, T.y), T.w);
    // u^-1 v^-1 u v, not u v u^-1 v^-1.
    EXPECT_EQ(T.G.comm(T.x, T.y), T.G.inv(T.z));
    auto c = T.G.commutator(T.G.generator(1), T.G.generator(0));
    EXPECT_EQ(T.G.rank(c), T.z);
  }
  Tq T(2);
  EXPECT_EQ(T.G.comm(T.G.pow(T.y, 2), T.x), T.w);
  for (Rank u = 0; u < T.G.order(); ++u) EXPECT_EQ(T.G.comm(u, u), 0u);
}

TEST(Commutator, ConjugationIsRightAction) {
  Tq T(2);
  for (Rank u = 0; u < T.G.order(); ++u)
    for (Rank g : {T.x, T.y, T.z}) {
      EXPECT_EQ(T.G.conj(u, g), T.G.mul(T.G.mul(T.G.inv(g), u), g));
      EXPECT_EQ(T.G.comm(u, g), T.G.mul(T.G.inv(u), T.G.conj(u, g)));
    }
}

TEST(Commutator, TriangleClosedFormExhaustive) {
  for (unsigned e : {2u, 3u}) {
    Tq T(e);
    const std::int64_t q = std::int64_t{1} << e;
    for (std::int64_t m = 0; m < q; ++m)
      for (std::int64_t n = 0; n < q; ++n) {
        Rank lhs = T.G.comm(T.G.pow(T.y, m), T.G.pow(T.x, n));
        Rank rhs = T.G.mul(T.G.mul(T.G.pow(T.z, m * n), T.G.pow(T.t, m * choose2(n))),
                           T.G.pow(T.w, n * choose2(m)));
        ASSERT_EQ(lhs, rhs) << "e=" << e << " m=" << m << " n=" << n;
      }
  }
}

TEST(Powers, OrdersAndNegativeExponents) {
  Tq T(2);
  EXPECT_EQ(T.G.order_of(T.x), 4u);
  EXPECT_EQ(T.G.order_of(T.z), 2u);
  EXPECT_EQ(T.G.order_of(Rank{0}), 1u);
  for (Rank u = 0; u < T.G.order(); ++u) {
    auto o = T.G.order_of(u);
    EXPECT_EQ(T.G.order() % o, 0u);
    EXPECT_EQ(T.G.pow(u, static_cast<std::int64_t>(o)), 0u);
    EXPECT_EQ(o, oracle::order(T.G, u));
    EXPECT_EQ(T.G.pow(u, -3), T.G.inv(T.G.pow(u, 3)));
    EXPECT_EQ(T.G.mul(u, T.G.inv(u)), 0u);
    EXPECT_EQ(T.G.pow(u, 5), T.G.mul(T.G.mul(T.G.mul(T.G.mul(u, u), u), u), u));
  }
  auto u = T.G.unrank(77);
  EXPECT_EQ(T.G.power_of(u, -1), T.G.invert(u));
  EXPECT_EQ(T.G.power_of(u, 0), T.G.identity());
}

TEST(Rank, RankAndUnrankAreInverse) {
  auto G = construct(Class2FiveTuple{3, 2, 1, 1, 1, 0});
  std::vector<bool> hit(G.order(), false);
  for (Rank r = 0; r < G.order(); ++r) {
    auto u = G.unrank(r);
    EXPECT_TRUE(G.valid(u));
    EXPECT_EQ(G.rank(u), r);
    for (std::size_t i = 0; i < G.num_gens(); ++i) EXPECT_EQ(u.exps[i], G.digit(r, i));
    hit[r] = true;
  }
  // Last generator varies fastest.
  EXPECT_EQ(G.gen_rank(G.num_gens() - 1), 1u);
  EXPECT_THROW(G.element({0, 0}), InvalidParams);
  EXPECT_THROW(G.element({9, 0, 0}), InvalidParams);
}

TEST(Subgroups, GeneratedSubgroups) {
  Tq T(2);
  EXPECT_EQ(T.G.subgroup_generated(std::vector<Rank>{}).size(), 1u);
  EXPECT_EQ(T.G.subgroup_generated(std::vector<Rank>{T.x}).size(), 4u);
  auto M = construct(Metacyclic{5, 2, 1});
  std::vector<Rank> ab{M.gen_rank(1), M.gen_rank(0)};
  EXPECT_EQ(M.subgroup_generated(ab).size(), 625u);
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    std::vector<Rank> gens{static_cast<Rank>(rng() % T.G.order()), static_cast<Rank>(rng() % T.G.order())};
    auto H = T.G.subgroup_generated(gens);
    EXPECT_EQ(H, oracle::closure(T.G, gens));
    // Closed under products and inverses.
    H.for_each([&](Rank a) {
      EXPECT_TRUE(H.contains(T.G.inv(a)));
      for (Rank g : gens) EXPECT_TRUE(H.contains(T.G.mul(a, g)));
    });
  }
}

TEST(Subgroups, CenterOfTriangleQuotient) {
  Tq T(2);
  const auto& Z = T.G.center();
  EXPECT_EQ(Z, oracle::closure(T.G, {T.t, T.w}));
  EXPECT_EQ(Z.size(), 4u);
  for (Rank u = 0; u < T.G.order(); ++u) {
    bool central = true;
    for (Rank g = 0; g < T.G.order() && central; ++g) central = T.G.mul(u, g) == T.G.mul(g, u);
    EXPECT_EQ(Z.contains(u), central);
  }
}

TEST(Subgroups, ExponentsOfTriangleQuotient) {
  for (unsigned e : {2u, 3u}) {
    Tq T(e);
    EXPECT_EQ(T.G.exponent(), std::uint64_t{1} << e);
    EXPECT_EQ(oracle::max_order(T.G, T.G.all_elements()), std::uint64_t{1} << e);
    EXPECT_EQ(oracle::max_order(T.G, T.G.derived()), std::uint64_t{1} << (e - 1));
  }
}

TEST(Subgroups, CharacteristicSubgroupsMatchDefinitions) {
  for (FamilyParams params : {FamilyParams{TriangleQuotient{2}}, FamilyParams{Metacyclic{5, 2, 1}},
                              FamilyParams{Class2FiveTuple{3, 2, 1, 1, 0, 0}}, FamilyParams{Metacyclic{2, 3, 1}}}) {
    auto G = construct(params);
    const auto N = G.order();
    const auto p = G.prime();
    std::vector<Rank> comms, powers, all_comms_and_powers;
    for (Rank a = 0; a < N; ++a) {
      powers.push_back(G.pow(a, p));
      for (Rank b = 0; b < N; ++b) comms.push_back(G.comm(a, b));
    }
    auto derived = oracle::closure(G, comms);
    auto agemo1 = oracle::closure(G, powers);
    all_comms_and_powers = comms;
    all_comms_and_powers.insert(all_comms_and_powers.end(), powers.begin(), powers.end());
    EXPECT_EQ(G.derived(), derived) << describe(params);
    EXPECT_EQ(G.agemo(1), agemo1) << describe(params);
    EXPECT_EQ(G.frattini(), oracle::closure(G, all_comms_and_powers)) << describe(params);
    EXPECT_EQ(G.nilpotency_class(), class_by_commutators(G)) << describe(params);
    // Powerful: G' inside G^p, or inside G^4 when p = 2.
    std::vector<Rank> fourth;
    for (Rank a = 0; a < N; ++a) fourth.push_back(G.pow(a, 4));
    EXPECT_EQ(G.is_powerful(), derived.is_subset_of(p == 2 ? oracle::closure(G, fourth) : agemo1))
        << describe(params);

    auto data = characteristic_subgroups(G);
    EXPECT_EQ(data.frattini, G.frattini());
    EXPECT_EQ(data.center, G.center());
    EXPECT_EQ(data.exponent, G.exponent());
    EXPECT_EQ(data.agemo.front().size(), N);
    EXPECT_EQ(data.agemo.back().size(), 1u);
  }
}

TEST(Subgroups, MetacyclicIsPowerfulWithLargeAgemo) {
  auto G = construct(Metacyclic{5, 2, 1});
  EXPECT_TRUE(G.is_powerful());
  auto fifth = G.agemo(1);
  EXPECT_EQ(fifth.size(), 25u);
  std::vector<Rank> powers;
  for (Rank r = 0; r < G.order(); ++r) powers.push_back(G.pow(r, 5));
  EXPECT_EQ(fifth, oracle::closure(G, powers));
  // Derived subgroup is <a^5>.
  Rank a = G.gen_rank(1);
  EXPECT_EQ(G.derived(), oracle::closure(G, {G.pow(a, 5)}));
}

TEST(Subgroups, Centralizers) {
  Tq T(2);
  for (Rank u = 0; u < T.G.order(); ++u) {
    auto C = T.G.centralizer(u);
    for (Rank g = 0; g < T.G.order(); ++g) ASSERT_EQ(C.contains(g), T.G.mul(u, g) == T.G.mul(g, u));
  }
}

TEST(Subgroups, Regularity) {
  // A 2-group is regular exactly when it is abelian; class < p forces
  // regularity for odd p.
  EXPECT_FALSE(construct(Class2FiveTuple{2, 1, 1, 1, 0, 0}).is_regular().regular);
  EXPECT_FALSE(construct(Class2FiveTuple{2, 1, 1, 1, 1, 1}).is_regular().regular);
  EXPECT_TRUE(construct(Abelian{2, 2, 1}).is_regular().regular);
  auto reg = construct(Class2FiveTuple{3, 1, 1, 1, 0, 0}).is_regular();
  EXPECT_TRUE(reg.regular);
  EXPECT_FALSE(reg.sampled);
  auto big = construct(Class2Beauville{5, 3, 2, 2, 1}).is_regular(1u << 16, 500, 1);
  EXPECT_TRUE(big.regular);
  EXPECT_TRUE(big.sampled);
  EXPECT_EQ(big.pairs_checked, 500u);
}

TEST(Subgroups, FrattiniQuotientCoordinates) {
  auto G = construct(Class2FiveTuple{3, 2, 1, 1, 0, 0});
  const auto& fq = G.frattini_quotient();
  ASSERT_TRUE(fq.available);
  EXPECT_EQ(fq.rank, 2u);
  // Coordinates are additive modulo p.
  std::mt19937_64 rng(5);
  for (int s = 0; s < 500; ++s) {
    Rank u = rng() % G.order(), v = rng() % G.order();
    auto a = fq.of(u), b = fq.of(v), c = fq.of(G.mul(u, v));
    EXPECT_EQ(c[0], (a[0] + b[0]) % 3);
    EXPECT_EQ(c[1], (a[1] + b[1]) % 3);
  }
  G.frattini().for_each([&](Rank r) { EXPECT_EQ(fq.of(r), (std::array<std::uint32_t, 2>{0, 0})); });
}

TEST(Concurrency, LazyCachesAreSharedSafely) {
  auto G = construct(TriangleQuotient{3});
  std::vector<std::size_t> sizes(4);
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i)
    pool.emplace_back([&, i] {
      sizes[i] = G.center().size() + G.derived().size() + G.frattini().size() + G.num_classes();
    });
  for (auto& t : pool) t.join();
  for (auto s : sizes) EXPECT_EQ(s, sizes[0]);
}

TEST(Relations, DefiningRelationsHoldInEveryFamily) {
  for (FamilyParams params :
       {FamilyParams{Metacyclic{5, 2, 1}}, FamilyParams{Metacyclic{3, 3, 2}}, FamilyParams{Class2FiveTuple{2, 2, 1, 1, 1, 0}},
        FamilyParams{Class2Beauville{5, 3, 2, 2, 1}}, FamilyParams{SpecialClass2{5, 2, 1}}, FamilyParams{TriangleQuotient{3}}}) {
    auto G = construct(params);
    const auto& pres = G.presentation();
    for (std::size_t i = 0; i < pres.size(); ++i)
      EXPECT_EQ(G.pow(G.gen_rank(i), static_cast<std::int64_t>(pres.rel_orders[i])), G.evaluate(pres.power_rels[i]));
    for (std::size_t i = 0; i < pres.size(); ++i)
      for (std::size_t j = i + 1; j < pres.size(); ++j) {
        auto it = pres.conj_rels.find({static_cast<int>(i), static_cast<int>(j)});
        Rank expected = it == pres.conj_rels.end() ? G.gen_rank(j) : G.evaluate(it->second);
        EXPECT_EQ(G.conj(G.gen_rank(j), G.gen_rank(i)), expected) << describe(params);
      }
  }
}
