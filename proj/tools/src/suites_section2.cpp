// Suites about which small p-groups are Beauville, and the automorphism
// families of the metacyclic and class-2 groups.

#include <algorithm>
#include <random>
#include <sstream>

#include "beauville/strongreal.hpp"
#include "documents.hpp"
#include "sampling.hpp"
#include "suites.hpp"

namespace beauville::cli {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

std::uint64_t max_order_in(const GroupTable& G, const ElementSet& S) {
  auto ord = G.element_orders();
  std::uint64_t best = 1;
  S.for_each([&](Rank r) { best = std::max<std::uint64_t>(best, ord[r]); });
  return best;
}

// theta(a) = b^{m p^{e-i}} a^n, theta(b) = b^{1 + r p^{e-i}} a^s.
std::pair<Rank, Rank> metacyclic_images(const GroupTable& G, const Metacyclic& P, std::int64_t m, std::int64_t n,
                                        std::int64_t r, std::int64_t s) {
  const Rank b = G.gen_rank(0), a = G.gen_rank(1);
  const auto q = static_cast<std::int64_t>(ipow(P.p, P.e - P.i));
  return {G.mul(G.pow(b, m * q), G.pow(a, n)), G.mul(G.pow(b, 1 + r * q), G.pow(a, s))};
}

// theta(a) = a^{1 + m p^{e-i}} b^n c_a, theta(b) = a^{r p^{e-i}} b^s c_b.
std::pair<Rank, Rank> class2_images(const GroupTable& G, const Class2Beauville& P, std::int64_t m, std::int64_t n,
                                    std::int64_t r, std::int64_t s, Rank ca, Rank cb) {
  const Rank a = G.gen_rank(0), b = G.gen_rank(1);
  const auto q = static_cast<std::int64_t>(ipow(P.p, P.e - P.i));
  return {G.mul(G.mul(G.pow(a, 1 + m * q), G.pow(b, n)), ca), G.mul(G.mul(G.pow(a, r * q), G.pow(b, s)), cb)};
}

struct Tuple {
  std::int64_t m, n, r, s;
};

std::string tuple_text(const Tuple& t) {
  std::ostringstream os;
  os << "(m,n,r,s)=(" << t.m << ',' << t.n << ',' << t.r << ',' << t.s << ')';
  return os.str();
}

// Draws automorphisms until `want` turn up or the draw cap is hit.
std::pair<std::vector<Automorphism>, bool> random_automorphisms(const GroupTable& G, std::uint64_t want,
                                                                std::mt19937_64& rng) {
  std::vector<Automorphism> out;
  while (out.size() < want) {
    auto theta = random_automorphism(G, rng, 1000);
    if (!theta) return {out, true};
    out.push_back(std::move(*theta));
  }
  return {out, false};
}

void completeness_check(Report& rep, const FamilyParams& params, const GroupTable& G, const ElementSet& A,
                        const ElementSet& B, std::uint64_t want, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [auts, capped] = random_automorphisms(G, want, rng);
  auto d = *G.distinguished();
  for (const auto& theta : auts) {
    Rank ia = theta.apply(G, d.first), ib = theta.apply(G, d.second);
    if (!A.contains(ia) || !B.contains(ib)) {
      rep.add_counterexample("completeness", "an automorphism lies outside the family",
                             map_document(params, G, ia, ib, "automorphism-outside-family"));
      return;
    }
  }
  std::ostringstream os;
  os << auts.size() << " random automorphisms, all in the family";
  if (capped) {
    os << " (draw cap reached before " << want << ")";
    rep.add("completeness", Status::unknown, os.str());
  } else {
    rep.add("completeness", Status::verified, os.str());
  }
}

}  // namespace

Report verify_prop_no_2group_class2(const Context& ctx, std::uint64_t max_order) {
  Report rep;
  rep.command = "verify prop-no-2group-class2";
  rep.params = {{"max_order", max_order}};
  auto tuples = enumerate_class2_tuples(2, max_order);
  std::uint64_t largest = 0;
  std::optional<Check> beauville_failure, bound_failure;
  Json groups = Json::array();
  for (const auto& t : tuples) {
    FamilyParams params = t;
    auto G = construct(params);
    largest = std::max(largest, G.order());
    auto found = find_beauville_structure(G, SearchOptions{.workers = ctx.workers});
    groups.push_back({{"group", to_json(params)}, {"beauville", to_string(found.found)}});
    if (found.found == Tri::yes && !beauville_failure) {
      beauville_failure = Check{"no-beauville-structure", Status::counterexample,
                                describe(params) + " has a Beauville structure",
                                structure_document(params, G, *found.structure)};
    }
    // exp Phi(G) <= 2^{e-1} where 2^e = exp G
    if (2 * max_order_in(G, G.frattini()) > G.exponent() && !bound_failure) {
      bound_failure = Check{"frattini-exponent-bound", Status::counterexample,
                            describe(params) + " has exp Phi(G) = exp G",
                            identity_document(params, "frattini-exponent", Json::object())};
    }
  }
  rep.group_order = largest;
  rep.add("groups-enumerated", Status::verified, std::to_string(tuples.size()) + " five-tuple groups with p = 2");
  if (beauville_failure) {
    rep.checks.push_back(*beauville_failure);
  } else {
    rep.add("no-beauville-structure", Status::verified,
            "exhaustive search finds no Beauville structure in any of the " + std::to_string(tuples.size()) +
                " groups");
  }
  if (bound_failure) {
    rep.checks.push_back(*bound_failure);
  } else {
    rep.add("frattini-exponent-bound", Status::verified, "exp Phi(G) <= exp G / 2 in every group");
  }
  rep.result = {{"groups", groups}};
  return rep;
}

Report verify_thm_metacyclic(const Context& ctx, const Metacyclic& params) {
  validate(params);
  Report rep;
  rep.command = "verify thm-metacyclic";
  rep.params = to_json(params);
  auto G = construct(params);
  rep.group_order = G.order();
  const bool expected = metacyclic_beauville_predicate(params.p, params.e, params.i);
  auto found = find_beauville_structure(G, SearchOptions{.workers = ctx.workers});
  std::string observed = found.found == Tri::yes ? "Beauville" : found.found == Tri::no ? "not Beauville" : "unknown";
  std::string detail = "search: " + observed + "; predicate p >= 5: " + (expected ? "Beauville" : "not Beauville");
  if (found.found == Tri::unknown) {
    rep.add("beauville-status", Status::unknown, detail);
  } else if ((found.found == Tri::yes) == expected) {
    rep.add("beauville-status", Status::verified, detail);
  } else if (found.found == Tri::yes) {
    rep.add_counterexample("beauville-status", detail, structure_document(params, G, *found.structure));
  } else {
    rep.add_counterexample("beauville-status", detail, status_document(params, false));
  }
  if (found.structure) {
    if (is_beauville_structure(G, found.structure->pair1, found.structure->pair2))
      rep.add("structure-verified", Status::verified, "Sigma sets of the found pairs meet only in 1");
    else
      rep.add_counterexample("structure-verified", "found pairs have overlapping Sigma sets",
                             structure_document(params, G, *found.structure));
    rep.result = structure_document(params, G, *found.structure);
  }
  return rep;
}

Report verify_thm_class2_criterion(const Context& ctx, std::uint32_t p, std::uint64_t max_order) {
  Report rep;
  rep.command = "verify thm-class2-criterion";
  rep.params = {{"p", p}, {"max_order", max_order}};
  validate(Class2FiveTuple{p, 1, 1, 1, 0, 0});
  auto tuples = enumerate_class2_tuples(p, max_order);
  std::uint64_t beauville = 0, largest = 0;
  Json groups = Json::array();
  for (const auto& t : tuples) {
    FamilyParams params = t;
    auto G = construct(params);
    largest = std::max(largest, G.order());
    const bool predicate = p >= 5 && class2_beauville_criterion(G);
    auto found = find_beauville_structure(G, SearchOptions{.workers = ctx.workers});
    groups.push_back({{"group", to_json(params)}, {"beauville", to_string(found.found)}, {"criterion", predicate}});
    if (found.found == Tri::unknown) {
      rep.add("criterion/" + describe(params), Status::unknown, "search budget exhausted");
      continue;
    }
    const bool is = found.found == Tri::yes;
    beauville += is;
    if (is != predicate) {
      rep.add_counterexample("criterion-matches-search",
                             describe(params) + ": search says " + (is ? "Beauville" : "not Beauville") +
                                 ", criterion says " + (predicate ? "Beauville" : "not Beauville"),
                             is ? structure_document(params, G, *found.structure) : status_document(params, false));
      rep.group_order = largest;
      rep.result = {{"groups", groups}};
      return rep;
    }
  }
  rep.group_order = largest;
  rep.add("criterion-matches-search", Status::verified,
          std::to_string(tuples.size()) + " groups, " + std::to_string(beauville) +
              " Beauville; exhaustive status agrees with p >= 5 and |G^{p^{e-1}}| >= p^2 on all");
  rep.result = {{"groups", groups}};
  return rep;
}

Report verify_aut_family(const Context& ctx, const FamilyParams& params, const AutFamilyOptions& opts) {
  validate(params);
  Report rep;
  rep.command = "verify aut-family";
  rep.params = to_json(params);
  auto G = construct(params);
  rep.group_order = G.order();

  if (const auto* P = std::get_if<Metacyclic>(&params)) {
    std::vector<std::array<std::int64_t, 4>> failures;
    auto family = metacyclic_family(G, *P, &failures);
    if (!failures.empty()) {
      auto [m, n, r, s] = failures.front();
      auto [ia, ib] = metacyclic_images(G, *P, m, n, r, s);
      rep.add_counterexample("family-maps-are-automorphisms",
                             tuple_text({m, n, r, s}) + " does not give an automorphism",
                             map_document(params, G, ia, ib, "not-automorphism"));
    } else {
      rep.add("family-maps-are-automorphisms", Status::verified,
              "every parameter tuple gives an automorphism; " + std::to_string(family.size()) + " distinct maps");
    }
    std::vector<Automorphism> brute;
    try {
      brute = brute_force_automorphisms(G, BruteForceOptions{.workers = ctx.workers, .materialize = false});
    } catch (const TooLarge& e) {
      rep.add("family-equals-brute-force", Status::unknown, e.what());
      return rep;
    }
    std::vector<Automorphism> missing;
    std::set_difference(brute.begin(), brute.end(), family.begin(), family.end(), std::back_inserter(missing));
    std::string sizes = "|family| = " + std::to_string(family.size()) + ", |Aut(G)| = " + std::to_string(brute.size());
    auto d = *G.distinguished();
    if (!missing.empty()) {
      rep.add_counterexample("family-equals-brute-force", sizes,
                             map_document(params, G, missing.front().apply(G, d.first),
                                          missing.front().apply(G, d.second), "automorphism-outside-family"));
    } else if (family.size() != brute.size()) {
      std::vector<Automorphism> extra;
      std::set_difference(family.begin(), family.end(), brute.begin(), brute.end(), std::back_inserter(extra));
      rep.add_counterexample("family-equals-brute-force", sizes + " but the family is not contained in Aut(G)",
                             map_document(params, G, extra.front().apply(G, d.first),
                                          extra.front().apply(G, d.second), "not-automorphism"));
    } else {
      rep.add("family-equals-brute-force", Status::verified, sizes);
    }
    rep.result = {{"family_size", family.size()}, {"aut_size", brute.size()}};
    return rep;
  }

  const auto* P = std::get_if<Class2Beauville>(&params);
  if (!P) throw UsageError("no automorphism family is known for " + family_name(params));
  if (!(0 < P->k && P->k < P->j))
    throw UsageError("the class-2 automorphism family needs 0 < k < j");
  rep.params["samples"] = opts.soundness_samples;
  rep.params["completeness_samples"] = opts.completeness_samples;

  std::mt19937_64 rng(ctx.seed);
  const auto pi = static_cast<std::int64_t>(ipow(P->p, P->i));
  std::uniform_int_distribution<std::int64_t> param(1, pi);
  auto commutators = G.derived().members();
  std::uniform_int_distribution<std::size_t> pick_c(0, commutators.size() - 1);
  bool sound = true;
  for (std::uint64_t k = 0; k < opts.soundness_samples && sound; ++k) {
    Tuple t{param(rng), param(rng), param(rng), param(rng)};
    while (t.s % P->p == 0) t.s = param(rng);
    Rank ca = commutators[pick_c(rng)], cb = commutators[pick_c(rng)];
    if (!class2_aut(G, *P, t.m, t.n, t.r, t.s, ca, cb)) {
      auto [ia, ib] = class2_images(G, *P, t.m, t.n, t.r, t.s, ca, cb);
      rep.add_counterexample("soundness", tuple_text(t) + " does not give an automorphism",
                             map_document(params, G, ia, ib, "not-automorphism"));
      sound = false;
    }
  }
  if (sound)
    rep.add("soundness", Status::verified,
            std::to_string(opts.soundness_samples) + " sampled parameter tuples, all automorphisms");
  auto [A, B] = class2_family_sets(G, *P);
  completeness_check(rep, params, G, A, B, opts.completeness_samples, ctx.seed + 1);
  return rep;
}

Report find_structure(const Context& ctx, const FamilyParams& params, const FindOptions& opts) {
  validate(params);
  Report rep;
  rep.command = "find-structure";
  rep.params = to_json(params);
  rep.params["strategy"] = opts.random ? "seeded-random" : "deterministic-scan";
  rep.params["budget"] = opts.budget;
  auto G = construct(params);
  rep.group_order = G.order();
  SearchOptions so;
  so.strategy = opts.random ? SearchStrategy::seeded_random : SearchStrategy::deterministic_scan;
  so.seed = ctx.seed;
  so.budget = opts.budget;
  so.workers = ctx.workers;
  auto found = find_beauville_structure(G, so);
  const std::string examined = std::to_string(found.pairs_examined) + " candidates examined";
  switch (found.found) {
    case Tri::yes:
      rep.add("beauville-status", Status::verified, "Beauville structure found; " + examined);
      rep.result = structure_document(params, G, *found.structure);
      break;
    case Tri::no:
      rep.add("beauville-status", Status::verified, "no Beauville structure exists (exhaustive); " + examined);
      rep.result = status_document(params, false);
      break;
    case Tri::unknown:
      rep.add("beauville-status", Status::unknown, "budget exhausted; " + examined);
      break;
  }
  return rep;
}

}  // namespace beauville::cli
