// Replays witness and counterexample documents. The status of each check
// says whether the claim in the document holds; a refuted claim is reported
// as a counterexample carrying the document itself.

#include <sstream>

#include "documents.hpp"
#include "identities.hpp"
#include "suites.hpp"

namespace beauville::cli {

namespace {

const std::string& string_field(const Json& doc, const char* key) {
  const auto& v = require_field(doc, key);
  if (!v.is_string()) throw ParseError(std::string("\"") + key + "\" must be a string");
  return v.get_ref<const std::string&>();
}

std::int64_t int_field(const Json& doc, const char* key) {
  const auto& v = require_field(doc, key);
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

void claim(Report& rep, const Json& doc, const std::string& name, bool holds, const std::string& detail) {
  if (holds)
    rep.add(name, Status::verified, detail);
  else
    rep.add_counterexample(name, "claim refuted: " + detail, doc);
}

Automorphism theta_field(const GroupTable& G, const Json& doc, Report& rep) {
  auto images = images_from_json(G, require_field(doc, "theta"));
  auto theta = automorphism_from_images(G, images);
  claim(rep, doc, "automorphism", theta.has_value(), "theta preserves the relations and is bijective");
  return theta ? *theta : Automorphism(images);
}

bool identity_fails(const GroupTable& G, const FamilyParams& params, const std::string& name, const Json& args) {
  if (name == "frattini-exponent") {
    auto ord = G.element_orders();
    std::uint64_t best = 1;
    G.frattini().for_each([&](Rank r) { best = std::max<std::uint64_t>(best, ord[r]); });
    return 2 * best > G.exponent();
  }
  const auto* tq = std::get_if<TriangleQuotient>(&params);
  if (!tq) throw ParseError("identity '" + name + "' lives on triangle-group quotients");
  if (name == "commutator-closed-form")
    return !identities::commutator_closed_form(G, int_field(args, "m"), int_field(args, "n"));
  if (name == "inversion-automorphism") return !identities::inversion_images(G);
  if (name == "inversion-defect") {
    const auto& side = string_field(args, "side");
    if (side != "x" && side != "y") throw ParseError("side must be \"x\" or \"y\"");
    return !identities::inversion_defect_holds(G, element_from_json(G, require_field(args, "a")),
                                side == "x" ? Side::x_side : Side::y_side);
  }
  if (name == "centralizer-lemma") {
    Rank u = element_from_json(G, require_field(args, "u"));
    return identities::centralizer_lemma_applies(G, u) && !identities::centralizer_lemma(G, u);
  }
  if (name == "exponents") return !identities::exponents(G, tq->e);
  if (name == "congruences") {
    CongruenceParams c{static_cast<unsigned>(int_field(args, "e")),
                       int_field(args, "i1"), int_field(args, "j1"), int_field(args, "k1"),
                       int_field(args, "i2"), int_field(args, "j2"), int_field(args, "k2")};
    if (c.e < 2 || c.e > 30) throw ParseError("congruence exponent out of range");
    return !identities::congruences(with_inverses(c));
  }
  if (name == "basis-change") {
    auto theta = automorphism_from_images(G, images_from_json(G, require_field(args, "theta")));
    if (!theta) throw ParseError("basis-change instance: theta is not an automorphism");
    auto pair = pair_from_json(G, require_field(args, "pair"));
    return !identities::basis_change(G, *theta, pair.x, pair.y).holds;
  }
  throw ParseError("unknown identity '" + name + "'");
}

}  // namespace

Report verify_witness_document(const Context& ctx, const Json& doc) {
  if (!doc.is_object()) throw ParseError("a witness document must be a JSON object");
  const std::string kind = doc.contains("kind") ? string_field(doc, "kind") : "strong-real-witness";
  const FamilyParams params = family_from_json(require_field(doc, "group"));
  validate(params);

  Report rep;
  rep.command = "verify-witness";
  rep.params = {{"kind", kind}, {"group", to_json(params)}};
  auto G = construct(params);
  rep.group_order = G.order();

  if (kind == "strong-real-witness") {
    auto s = structure_from_json(G, require_field(doc, "structure"));
    auto theta = theta_field(G, doc, rep);
    StrongRealWitness w{theta, element_from_json(G, require_field(doc, "g1")),
                        element_from_json(G, require_field(doc, "g2"))};
    claim(rep, doc, "beauville-structure", is_beauville_structure(G, s.pair1, s.pair2),
          "both pairs generate and their Sigma sets meet only in 1");
    claim(rep, doc, "strongly-real", verify_strong_real(G, s, w),
          "g_i theta(v) g_i^-1 = v^-1 for every entry v of pair i");
  } else if (kind == "beauville-structure") {
    auto s = structure_from_json(G, require_field(doc, "structure"));
    claim(rep, doc, "beauville-structure", is_beauville_structure(G, s.pair1, s.pair2),
          "both pairs generate and their Sigma sets meet only in 1");
  } else if (kind == "beauville-status") {
    const auto& b = require_field(doc, "beauville");
    if (!b.is_boolean()) throw ParseError("\"beauville\" must be a boolean");
    auto found = find_beauville_structure(G, SearchOptions{.workers = ctx.workers});
    if (found.found == Tri::unknown)
      rep.add("beauville-status", Status::unknown, "search did not finish");
    else
      claim(rep, doc, "beauville-status", (found.found == Tri::yes) == b.get<bool>(),
            std::string("exhaustive search: ") + (found.found == Tri::yes ? "Beauville" : "not Beauville"));
  } else if (kind == "map") {
    auto images = pair_from_json(G, require_field(doc, "pair_images"));
    const auto& what = string_field(doc, "claim");
    auto theta = extend_to_automorphism(G, images.x, images.y);
    if (what == "not-automorphism") {
      claim(rep, doc, "not-automorphism", !theta, "the map does not extend to an automorphism");
    } else if (what == "induces-minus-identity") {
      claim(rep, doc, "induces-minus-identity",
            theta && induced_matrix_mod_frattini(G, *theta).is_minus_identity(G.prime()),
            "the map is an automorphism acting as -1 on G/Phi(G)");
    } else if (what == "automorphism-outside-family") {
      std::pair<ElementSet, ElementSet> sets{ElementSet(G.order()), ElementSet(G.order())};
      if (const auto* m = std::get_if<Metacyclic>(&params))
        sets = metacyclic_family_sets(G, *m);
      else if (const auto* c = std::get_if<Class2Beauville>(&params))
        sets = class2_family_sets(G, *c);
      else
        throw ParseError("no automorphism family for " + family_name(params));
      claim(rep, doc, "automorphism-outside-family",
            theta && !(sets.first.contains(images.x) && sets.second.contains(images.y)),
            "the map is an automorphism outside the parametrised family");
    } else {
      throw ParseError("unknown map claim '" + what + "'");
    }
  } else if (kind == "inversion-witness") {
    auto theta = theta_field(G, doc, rep);
    auto pair = pair_from_json(G, require_field(doc, "pair"));
    Rank g = element_from_json(G, require_field(doc, "g"));
    claim(rep, doc, "inversion-witness", is_inversion_witness(G, theta, pair.x, pair.y, g),
          "theta(x) = (x^-1)^g and theta(y) = (y^-1)^g");
    claim(rep, doc, "not-minus-identity",
          !induced_matrix_mod_frattini(G, theta).is_minus_identity(G.prime()),
          "theta does not act as -1 on G/Phi(G)");
  } else if (kind == "not-strongly-real") {
    auto s = structure_from_json(G, require_field(doc, "structure"));
    claim(rep, doc, "beauville-structure", is_beauville_structure(G, s.pair1, s.pair2),
          "both pairs generate and their Sigma sets meet only in 1");
    try {
      auto auts = brute_force_automorphisms(G, BruteForceOptions{.workers = ctx.workers});
      auto w = find_strong_real_witness(G, s, auts);
      claim(rep, doc, "not-strongly-real", !w.has_value(),
            "no automorphism of G carries witnesses for both pairs (" + std::to_string(auts.size()) + " scanned)");
    } catch (const TooLarge& e) {
      rep.add("not-strongly-real", Status::unknown, e.what());
    }
  } else if (kind == "construction-failure") {
    auto s = structure_from_json(G, require_field(doc, "structure"));
    bool fails = false;
    try {
      TheoremBSolver solver(G);
      fails = solver.solve(s).used_fallback;
    } catch (const WitnessVerificationFailed&) {
      fails = true;
    }
    claim(rep, doc, "construction-failure", fails, "the constructed element does not verify");
  } else if (kind == "identity") {
    const auto& name = string_field(doc, "identity");
    const Json args = doc.contains("args") ? doc.at("args") : Json::object();
    claim(rep, doc, name, identity_fails(G, params, name, args), "the identity fails on this instance");
  } else {
    throw ParseError("unknown document kind '" + kind + "'");
  }
  return rep;
}

}  // namespace beauville::cli
