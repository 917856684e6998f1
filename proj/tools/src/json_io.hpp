#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "beauville/beauville.hpp"
#include "beauville/families.hpp"
#include "beauville/strongreal.hpp"

namespace beauville::cli {

using Json = nlohmann::ordered_json;

/// {"family": "...", <parameters>}. Missing parameters keep the family
/// defaults; unknown keys are rejected with InvalidParams.
Json to_json(const FamilyParams& params);
FamilyParams family_from_json(const Json& j);

/// Default parameters of a family by name.
FamilyParams default_family(const std::string& name);

/// Overrides one named parameter; InvalidParams if the family lacks it.
void set_family_field(FamilyParams& params, const std::string& key, std::uint64_t value);

/// Elements travel as exponent vectors of the collected normal form.
Json element_json(const GroupTable& G, Rank r);
Rank element_from_json(const GroupTable& G, const Json& j);

Json pair_json(const GroupTable& G, GeneratingPair p);
GeneratingPair pair_from_json(const GroupTable& G, const Json& j);

Json structure_json(const GroupTable& G, const BeauvilleStructure& s);
BeauvilleStructure structure_from_json(const GroupTable& G, const Json& j);

/// Images of the pc generators, one exponent vector each.
Json images_json(const GroupTable& G, const std::vector<Rank>& images);
std::vector<Rank> images_from_json(const GroupTable& G, const Json& j);

/// The replayable witness document: group, structure, theta, g1, g2.
Json witness_json(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s,
                  const StrongRealWitness& w);

/// Field access that reports malformed documents as ParseError.
const Json& require_field(const Json& j, const char* key);

}  // namespace beauville::cli
