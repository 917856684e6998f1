#include <gtest/gtest.h>

#include <random>
#include <set>

#include "beauville/errors.hpp"
#include "beauville/strongreal.hpp"
#include "oracles.hpp"

using namespace beauville;

namespace {

std::set<std::vector<Rank>> image_set(const std::vector<Automorphism>& auts) {
  std::set<std::vector<Rank>> out;
  for (const auto& a : auts) out.insert(a.images());
  return out;
}

std::vector<Rank> full_table(const GroupTable& G, const Automorphism& theta) {
  std::vector<Rank> t(G.order());
  for (Rank r = 0; r < G.order(); ++r) t[r] = theta.apply(G, r);
  return t;
}

// Coordinates of r in G / Phi(G) for the basis (u, v), by direct search
// over u^i v^j Phi.
std::pair<std::uint32_t, std::uint32_t> coords_mod_frattini(const GroupTable& G, Rank u, Rank v, Rank r) {
  const auto& F = G.frattini();
  for (std::uint32_t i = 0; i < G.prime(); ++i)
    for (std::uint32_t j = 0; j < G.prime(); ++j)
      if (F.contains(G.mul(G.inv(G.mul(G.pow(u, i), G.pow(v, j))), r))) return {i, j};
  ADD_FAILURE() << "no coordinates";
  return {0, 0};
}

Matrix2 matrix_by_search(const GroupTable& G, const Automorphism& theta) {
  auto [u, v] = *G.distinguished();
  auto c0 = coords_mod_frattini(G, u, v, theta.apply(G, u));
  auto c1 = coords_mod_frattini(G, u, v, theta.apply(G, v));
  Matrix2 m;
  m.m[0][0] = c0.first;
  m.m[1][0] = c0.second;
  m.m[0][1] = c1.first;
  m.m[1][1] = c1.second;
  return m;
}

}  // namespace

TEST(BruteForce, QuaternionAndDihedralCounts) {
  auto Q = construct(Class2FiveTuple{2, 1, 1, 1, 0, 0});
  auto D = construct(Class2FiveTuple{2, 1, 1, 1, 1, 1});
  EXPECT_EQ(brute_force_automorphisms(Q).size(), 24u);
  EXPECT_EQ(brute_force_automorphisms(D).size(), 8u);
  EXPECT_EQ(oracle::count_automorphisms_five_tuple(Q), 24u);
  EXPECT_EQ(oracle::count_automorphisms_five_tuple(D), 8u);
}

TEST(BruteForce, MatchesTableOracleOnSmallGroups) {
  for (auto t : enumerate_class2_tuples(2, 32)) {
    auto G = construct(t);
    auto auts = brute_force_automorphisms(G);
    EXPECT_EQ(auts.size(), oracle::count_automorphisms_five_tuple(G)) << describe(t);
    for (const auto& a : auts) ASSERT_TRUE(oracle::is_automorphism_table(G, full_table(G, a)));
  }
}

TEST(BruteForce, ClosedUnderCompositionAndInverse) {
  for (FamilyParams params : {FamilyParams{Class2FiveTuple{2, 1, 1, 1, 0, 0}}, FamilyParams{Class2FiveTuple{2, 1, 1, 1, 1, 1}},
                              FamilyParams{Abelian{5, 1, 1}}, FamilyParams{Class2FiveTuple{2, 2, 1, 1, 1, 0}}}) {
    auto G = construct(params);
    auto auts = brute_force_automorphisms(G);
    auto set = image_set(auts);
    std::set<std::vector<Rank>> tables;
    for (const auto& a : auts) {
      ASSERT_TRUE(set.count(inverse(G, a).images())) << describe(params);
      EXPECT_TRUE(compose(G, a, inverse(G, a)).is_identity(G));
      for (const auto& b : auts) ASSERT_TRUE(set.count(compose(G, a, b).images())) << describe(params);
      tables.insert(full_table(G, a));
    }
    EXPECT_EQ(tables.size(), auts.size());  // faithful
  }
}

TEST(BruteForce, TriangleQuotientAutomorphismGroup) {
  auto G = construct(TriangleQuotient{2});
  auto auts = brute_force_automorphisms(G);
  EXPECT_EQ(auts.size(), 6144u);
  auto set = image_set(auts);
  std::mt19937_64 rng(5);
  for (int s = 0; s < 3000; ++s) {
    const auto& a = auts[rng() % auts.size()];
    const auto& b = auts[rng() % auts.size()];
    ASSERT_TRUE(set.count(compose(G, a, b).images()));
    ASSERT_TRUE(set.count(inverse(G, a).images()));
  }
  for (int s = 0; s < 20; ++s) ASSERT_TRUE(oracle::is_automorphism_table(G, full_table(G, auts[rng() % auts.size()])));
  // Every generating pair is the image of (x, y) under exactly one automorphism.
  std::uint64_t ordered_pairs = 2 * oracle::generating_pairs(G).size();
  EXPECT_EQ(auts.size(), ordered_pairs);
}

TEST(BruteForce, Limits) {
  BruteForceOptions opts;
  opts.max_order = 100;
  EXPECT_THROW(brute_force_automorphisms(construct(TriangleQuotient{2}), opts), TooLarge);
  BruteForceOptions par;
  par.workers = 3;
  auto G = construct(Class2FiveTuple{2, 2, 1, 1, 0, 1});
  EXPECT_EQ(brute_force_automorphisms(G, par), brute_force_automorphisms(G));
}

TEST(Extend, Examples) {
  for (unsigned e : {2u, 3u}) {
    auto G = construct(TriangleQuotient{e});
    auto [x, y] = *G.distinguished();
    const Rank z = G.gen_rank(2), t = G.gen_rank(3), w = G.gen_rank(4);
    auto id = extend_to_automorphism(G, x, y);
    ASSERT_TRUE(id.has_value());
    EXPECT_TRUE(id->is_identity(G));
    auto inv = extend_to_automorphism(G, G.inv(x), G.inv(y));
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(inv, inversion_automorphism(G));
    EXPECT_EQ(inv->apply(G, z), G.mul(G.mul(z, G.inv(t)), G.inv(w)));
    EXPECT_EQ(inv->apply(G, t), G.inv(t));
    EXPECT_EQ(inv->apply(G, w), G.inv(w));
    EXPECT_FALSE(extend_to_automorphism(G, x, x).has_value());
  }
}

TEST(Extend, RejectsNonHomomorphisms) {
  auto G = construct(Metacyclic{5, 2, 1});
  Rank b = G.gen_rank(0), a = G.gen_rank(1);
  // a -> a^2, b -> b keeps [a, b] = a^5 but a -> b, b -> a does not.
  EXPECT_TRUE(extend_to_automorphism(G, G.pow(a, 2), b).has_value());
  EXPECT_FALSE(extend_to_automorphism(G, b, a).has_value());
  EXPECT_FALSE(automorphism_from_images(G, {a, b}).has_value());
  EXPECT_TRUE(automorphism_from_images(G, {b, a}).has_value());  // pc order is (b, a)
}

TEST(Extend, AgreesWithTableOracle) {
  auto G = construct(Class2FiveTuple{2, 2, 1, 1, 1, 0});
  for (Rank ix = 0; ix < G.order(); ++ix)
    for (Rank iy = 0; iy < G.order(); ++iy) {
      auto theta = extend_to_automorphism(G, ix, iy);
      auto phi = oracle::extend_by_normal_form(G, {ix, iy, G.comm(ix, iy)});
      ASSERT_EQ(theta.has_value(), oracle::is_automorphism_table(G, phi));
      if (theta) ASSERT_EQ(full_table(G, *theta), phi);
    }
}

TEST(MetacyclicFamily, Examples) {
  Metacyclic P{5, 2, 1};
  auto G = construct(P);
  Rank b = G.gen_rank(0), a = G.gen_rank(1);
  auto id = metacyclic_aut(G, P, 5, 1, 5, 25);
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(id->is_identity(G));
  auto theta = metacyclic_aut(G, P, 1, 1, 5, 25);
  ASSERT_TRUE(theta.has_value());
  EXPECT_EQ(theta->apply(G, a), G.mul(G.pow(b, 5), a));
  EXPECT_EQ(theta->apply(G, b), b);
  EXPECT_THROW(metacyclic_aut(G, P, 1, 5, 1, 1), InvalidParams);
  EXPECT_THROW(metacyclic_aut(G, P, 0, 1, 1, 1), InvalidParams);
  EXPECT_THROW(metacyclic_aut(G, P, 1, 1, 6, 1), InvalidParams);
  EXPECT_THROW(metacyclic_aut(construct(Metacyclic{5, 3, 1}), P, 1, 1, 1, 1), NotInFamily);
}

TEST(MetacyclicFamily, EqualsAutomorphismGroup) {
  Metacyclic P{5, 2, 1};
  auto G = construct(P);
  std::vector<std::array<std::int64_t, 4>> failures;
  auto family = metacyclic_family(G, P, &failures);
  EXPECT_TRUE(failures.empty());
  auto brute = brute_force_automorphisms(G);
  EXPECT_EQ(brute.size(), 12500u);  // p^i p^i phi(p^e) p^e
  EXPECT_EQ(family.size(), brute.size());
  EXPECT_EQ(image_set(family), image_set(brute));
  auto [A, B] = metacyclic_family_sets(G, P);
  for (const auto& theta : brute) {
    ASSERT_TRUE(A.contains(theta.apply(G, G.gen_rank(1))));
    ASSERT_TRUE(B.contains(theta.apply(G, G.gen_rank(0))));
  }
}

TEST(MetacyclicFamily, OtherParameters) {
  for (Metacyclic P : {Metacyclic{3, 2, 1}, Metacyclic{2, 3, 1}, Metacyclic{2, 3, 2}, Metacyclic{3, 3, 2}}) {
    auto G = construct(P);
    std::vector<std::array<std::int64_t, 4>> failures;
    auto family = metacyclic_family(G, P, &failures);
    // Full table checks cost |G|^2 each; sample them on the larger groups.
    std::mt19937_64 rng(P.p * 100 + P.e);
    const bool every = G.order() <= 81;
    for (std::size_t s = 0; s < (every ? family.size() : 300); ++s) {
      const auto& theta = every ? family[s] : family[rng() % family.size()];
      ASSERT_TRUE(oracle::is_automorphism_table(G, full_table(G, theta))) << describe(P);
    }
    if (P.p == 2) continue;  // the family is stated for odd primes
    EXPECT_TRUE(failures.empty()) << describe(P);
    EXPECT_EQ(image_set(family), image_set(brute_force_automorphisms(G))) << describe(P);
  }
}

TEST(Class2Family, Examples) {
  Class2Beauville P{5, 3, 2, 2, 1};
  auto G = construct(P);
  const Rank a = G.gen_rank(0), b = G.gen_rank(1);
  const Rank c = G.comm(b, a);
  // With m = n = r = p^i and s = 1: a -> a^{1+p^e} b^{p^i} c_a = a c^{p^k} c_a and
  // b -> b c_b, so c_a = c^{-p^k} gives the identity.
  auto shifted = class2_aut(G, P, 25, 25, 25, 1, 0, 0);
  ASSERT_TRUE(shifted.has_value());
  EXPECT_EQ(shifted->apply(G, a), G.mul(a, G.pow(c, 5)));
  EXPECT_EQ(shifted->apply(G, b), b);
  auto id = class2_aut(G, P, 25, 25, 25, 1, G.pow(c, -5), 0);
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(id->is_identity(G));

  auto theta = class2_aut(G, P, 1, 1, 1, 1, 0, 0);
  ASSERT_TRUE(theta.has_value());
  EXPECT_TRUE(oracle::class2_beauville_relations_hold(G, P, theta->apply(G, a), theta->apply(G, b)));
  EXPECT_TRUE(oracle::generates(G, theta->apply(G, a), theta->apply(G, b)));
  EXPECT_EQ(theta->apply(G, a), G.mul(G.pow(a, 6), b));
  EXPECT_EQ(theta->apply(G, b), G.mul(G.pow(a, 5), b));

  EXPECT_THROW(class2_aut(G, P, 1, 1, 1, 5, 0, 0), InvalidParams);
  EXPECT_THROW(class2_aut(G, P, 1, 1, 1, 1, a, 0), InvalidParams);
  EXPECT_THROW(class2_aut(G, P, 26, 1, 1, 1, 0, 0), InvalidParams);
  auto H = construct(Class2Beauville{5, 2, 2, 2, 2});
  EXPECT_THROW(class2_aut(H, Class2Beauville{5, 2, 2, 2, 2}, 1, 1, 1, 1, 0, 0), NotInFamily);
}

TEST(Class2Family, SampledSoundness) {
  Class2Beauville P{5, 3, 2, 2, 1};
  auto G = construct(P);
  auto Gp = G.derived().members();
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 500) {
    std::int64_t m = 1 + rng() % 25, n = 1 + rng() % 25, r = 1 + rng() % 25, s = 1 + rng() % 25;
    if (s % 5 == 0) continue;
    auto theta = class2_aut(G, P, m, n, r, s, Gp[rng() % Gp.size()], Gp[rng() % Gp.size()]);
    ASSERT_TRUE(theta.has_value()) << m << " " << n << " " << r << " " << s;
    // Bijective and multiplicative on random products.
    for (int k = 0; k < 20; ++k) {
      Rank u = rng() % G.order(), v = rng() % G.order();
      ASSERT_EQ(theta->apply(G, G.mul(u, v)), G.mul(theta->apply(G, u), theta->apply(G, v)));
    }
    ++checked;
  }
}

TEST(Class2Family, RandomAutomorphismsLieInFamily) {
  Class2Beauville P{5, 3, 2, 2, 1};
  auto G = construct(P);
  auto [A, B] = class2_family_sets(G, P);
  std::mt19937_64 rng(23);
  int found = 0;
  while (found < 200) {
    Rank ia = rng() % G.order(), ib = rng() % G.order();
    auto theta = extend_to_automorphism(G, ia, ib);
    if (!theta) continue;
    ++found;
    EXPECT_TRUE(A.contains(ia) && B.contains(ib));
  }
}

TEST(Matrix, Examples) {
  auto T = construct(TriangleQuotient{2});
  EXPECT_TRUE(induced_matrix_mod_frattini(T, *extend_to_automorphism(T, T.gen_rank(0), T.gen_rank(1))).is_identity());
  EXPECT_TRUE(induced_matrix_mod_frattini(T, *inversion_automorphism(T)).is_minus_identity(2));
  auto T3 = construct(TriangleQuotient{3});
  EXPECT_TRUE(induced_matrix_mod_frattini(T3, *inversion_automorphism(T3)).is_minus_identity(2));

  Metacyclic P{5, 2, 1};
  auto G = construct(P);
  for (std::int64_t n : {1, 2, 7, 24})
    for (std::int64_t s : {1, 3, 5, 25}) {
      auto theta = metacyclic_aut(G, P, 2, n, 3, s);
      ASSERT_TRUE(theta.has_value());
      Matrix2 want;
      want.m = {{{static_cast<std::uint32_t>(n % 5), static_cast<std::uint32_t>(s % 5)}, {0, 1}}};
      EXPECT_EQ(induced_matrix_mod_frattini(G, *theta), want) << n << " " << s;
    }
}

TEST(Matrix, MatchesCosetSearch) {
  for (FamilyParams params : {FamilyParams{TriangleQuotient{2}}, FamilyParams{Abelian{5, 1, 1}},
                              FamilyParams{Class2FiveTuple{3, 1, 1, 1, 0, 0}}}) {
    auto G = construct(params);
    auto auts = brute_force_automorphisms(G);
    std::mt19937_64 rng(29);
    for (int s = 0; s < 300; ++s) {
      const auto& theta = auts[rng() % auts.size()];
      ASSERT_EQ(induced_matrix_mod_frattini(G, theta), matrix_by_search(G, theta)) << describe(params);
    }
  }
}

TEST(Matrix, FamiliesNeverInduceMinusIdentity) {
  Metacyclic M{5, 2, 1};
  auto G = construct(M);
  for (const auto& theta : metacyclic_family(G, M)) ASSERT_FALSE(induced_matrix_mod_frattini(G, theta).is_minus_identity(5));

  // Class2: a -> a b^n mod Phi and b -> b^s mod Phi, whatever m, r, c_a, c_b.
  Class2Beauville P{5, 3, 2, 2, 1};
  auto H = construct(P);
  auto Gp = H.derived().members();
  std::mt19937_64 rng(31);
  for (std::int64_t n = 1; n <= 25; ++n)
    for (std::int64_t s = 1; s <= 25; ++s) {
      if (s % 5 == 0) continue;
      for (int k = 0; k < 4; ++k) {
        auto theta = class2_aut(H, P, 1 + rng() % 25, n, 1 + rng() % 25, s, Gp[rng() % Gp.size()], Gp[rng() % Gp.size()]);
        ASSERT_TRUE(theta.has_value());
        auto mat = induced_matrix_mod_frattini(H, *theta);
        Matrix2 want;
        want.m = {{{1, 0}, {static_cast<std::uint32_t>(n % 5), static_cast<std::uint32_t>(s % 5)}}};
        ASSERT_EQ(mat, want);
        ASSERT_EQ(mat, matrix_by_search(H, *theta));
        ASSERT_FALSE(mat.is_minus_identity(5));
      }
    }
}
