#include "json_io.hpp"

#include <limits>
#include <type_traits>
#include <utility>

#include "beauville/errors.hpp"

namespace beauville::cli {

namespace {

struct Field {
  const char* name;
  unsigned* value;
};

std::vector<Field> fields(FamilyParams& params) {
  static_assert(std::is_same_v<std::uint32_t, unsigned>);
  return std::visit(
      [](auto& g) -> std::vector<Field> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Metacyclic>) {
          return {{"p", &g.p}, {"e", &g.e}, {"i", &g.i}};
        } else if constexpr (std::is_same_v<T, Class2FiveTuple>) {
          return {{"p", &g.p}, {"alpha", &g.alpha}, {"beta", &g.beta},
                  {"gamma", &g.gamma}, {"rho", &g.rho}, {"sigma", &g.sigma}};
        } else if constexpr (std::is_same_v<T, Class2Beauville>) {
          return {{"p", &g.p}, {"e", &g.e}, {"i", &g.i}, {"j", &g.j}, {"k", &g.k}};
        } else if constexpr (std::is_same_v<T, SpecialClass2>) {
          return {{"p", &g.p}, {"n", &g.n}, {"r", &g.r}};
        } else if constexpr (std::is_same_v<T, TriangleQuotient>) {
          return {{"e", &g.e}};
        } else {
          return {{"p", &g.p}, {"m", &g.m}, {"n", &g.n}};
        }
      },
      params);
}

std::uint64_t as_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

FamilyParams default_family(const std::string& name) {
  if (name == "metacyclic") return Metacyclic{};
  if (name == "class2-five-tuple") return Class2FiveTuple{};
  if (name == "class2-beauville") return Class2Beauville{};
  if (name == "special-class2") return SpecialClass2{};
  if (name == "triangle-quotient") return TriangleQuotient{};
  if (name == "abelian") return Abelian{};
  throw InvalidParams("unknown family '" + name + "'");
}

void set_family_field(FamilyParams& params, const std::string& key, std::uint64_t value) {
  if (value > std::numeric_limits<unsigned>::max()) throw InvalidParams(key + " is out of range");
  for (auto& f : fields(params))
    if (key == f.name) {
      *f.value = static_cast<unsigned>(value);
      return;
    }
  throw InvalidParams("family " + family_name(params) + " has no parameter '" + key + "'");
}

Json to_json(const FamilyParams& params) {
  Json j;
  j["family"] = family_name(params);
  FamilyParams copy = params;
  for (auto& f : fields(copy)) j[f.name] = *f.value;
  return j;
}

FamilyParams family_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("family parameters must be a JSON object");
  const auto& name = require_field(j, "family");
  if (!name.is_string()) throw ParseError("\"family\" must be a string");
  FamilyParams params = default_family(name.get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "family") continue;
    set_family_field(params, key, as_count(value, key.c_str()));
  }
  return params;
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json element_json(const GroupTable& G, Rank r) { return G.unrank(r).exps; }

Rank element_from_json(const GroupTable& G, const Json& j) {
  if (!j.is_array() || j.size() != G.num_gens())
    throw ParseError("an element must be an array of " + std::to_string(G.num_gens()) + " exponents");
  Element u;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto e = as_count(j[i], "exponent");
    if (e >= G.rel_order(i)) throw ParseError("exponent " + std::to_string(e) + " exceeds its relative order");
    u.exps.push_back(e);
  }
  return static_cast<Rank>(G.rank(u));
}

Json pair_json(const GroupTable& G, GeneratingPair p) {
  return Json{{"x", element_json(G, p.x)}, {"y", element_json(G, p.y)}};
}

GeneratingPair pair_from_json(const GroupTable& G, const Json& j) {
  return {element_from_json(G, require_field(j, "x")), element_from_json(G, require_field(j, "y"))};
}

Json structure_json(const GroupTable& G, const BeauvilleStructure& s) {
  return Json{{"pair1", pair_json(G, s.pair1)}, {"pair2", pair_json(G, s.pair2)}};
}

BeauvilleStructure structure_from_json(const GroupTable& G, const Json& j) {
  return {pair_from_json(G, require_field(j, "pair1")), pair_from_json(G, require_field(j, "pair2"))};
}

Json images_json(const GroupTable& G, const std::vector<Rank>& images) {
  Json out = Json::array();
  for (Rank r : images) out.push_back(element_json(G, r));
  return out;
}

std::vector<Rank> images_from_json(const GroupTable& G, const Json& j) {
  if (!j.is_array() || j.size() != G.num_gens())
    throw ParseError("theta needs one image per pc generator (" + std::to_string(G.num_gens()) + ")");
  std::vector<Rank> out;
  for (const auto& e : j) out.push_back(element_from_json(G, e));
  return out;
}

Json witness_json(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s,
                  const StrongRealWitness& w) {
  return Json{{"kind", "strong-real-witness"},
              {"group", to_json(params)},
              {"structure", structure_json(G, s)},
              {"theta", images_json(G, w.theta.images())},
              {"g1", element_json(G, w.g1)},
              {"g2", element_json(G, w.g2)}};
}

}  // namespace beauville::cli
