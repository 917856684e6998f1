#pragma once

#include "json_io.hpp"

// Replayable documents. Every counterexample carries one, and
// `verify-witness --file` re-checks the claim each one makes.
namespace beauville::cli {

/// Claims the structure is Beauville.
Json structure_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s);

/// Claims the group is (or is not) Beauville; replay searches exhaustively.
Json status_document(const FamilyParams& params, bool beauville);

/// Claims something about the map sending the distinguished pair to
/// (ix, iy): "not-automorphism", "automorphism-outside-family" or
/// "induces-minus-identity".
Json map_document(const FamilyParams& params, const GroupTable& G, Rank ix, Rank iy, const char* claim);

/// Claims g witnesses theta(x) = (x^-1)^g, theta(y) = (y^-1)^g while theta
/// does not act as -1 on G/Phi(G).
Json inversion_witness_document(const FamilyParams& params, const GroupTable& G, const Automorphism& theta,
                                GeneratingPair pair, Rank g);

/// Claims the structure is not strongly real; replay scans Aut(G).
Json not_strongly_real_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s);

/// Claims the constructive witness algorithm fails on the structure.
Json construction_failure_document(const FamilyParams& params, const GroupTable& G, const BeauvilleStructure& s);

/// Claims a named identity fails; `args` carries its arguments.
Json identity_document(const FamilyParams& params, const std::string& identity, Json args);

}  // namespace beauville::cli
