#include "documents.hpp"

namespace beauville::cli {

Json structure_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s) {
  return Json{{"kind", "beauville-structure"}, {"group", to_json(params)}, {"structure", structure_json(G, s)}};
}

Json status_document(const FamilyParams& params, bool beauville) {
  return Json{{"kind", "beauville-status"}, {"group", to_json(params)}, {"beauville", beauville}};
}

Json map_document(const FamilyParams& params, const GroupTable& G, Rank ix, Rank iy, const char* claim) {
  return Json{{"kind", "map"}, {"group", to_json(params)}, {"pair_images", pair_json(G, {ix, iy})}, {"claim", claim}};
}

Json inversion_witness_document(const FamilyParams& params, const GroupTable& G, const Automorphism& theta,
                                GeneratingPair pair, Rank g) {
  return Json{{"kind", "inversion-witness"},
              {"group", to_json(params)},
              {"theta", images_json(G, theta.images())},
              {"pair", pair_json(G, pair)},
              {"g", element_json(G, g)}};
}

Json not_strongly_real_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s) {
  return Json{{"kind", "not-strongly-real"}, {"group", to_json(params)}, {"structure", structure_json(G, s)}};
}

Json construction_failure_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s) {
  return Json{{"kind", "construction-failure"}, {"group", to_json(params)}, {"structure", structure_json(G, s)}};
}

Json identity_document(const FamilyParams& params, const std::string& identity, Json args) {
  return Json{{"kind", "identity"}, {"group", to_json(params)}, {"identity", identity}, {"args", std::move(args)}};
}

}  // namespace beauville::cli
