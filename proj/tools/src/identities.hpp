#pragma once

#include <cstdint>

#include "beauville/strongreal.hpp"

// Single-instance checks on triangle-group quotients. The identities suite
// runs them over many instances; replay reruns one.
namespace beauville::cli::identities {

/// [y^m, x^n] = z^{mn} t^{m C(n,2)} w^{n C(m,2)}.
bool commutator_closed_form(const GroupTable& G, std::int64_t m, std::int64_t n);

/// The inversion automorphism sends z, t, w to z t^-1 w^-1, t^-1, w^-1.
bool inversion_images(const GroupTable& G);

bool inversion_defect_holds(const GroupTable& G, Rank a, Side side);

/// u in <x, Phi> \ Phi or <y, Phi> \ Phi, the shapes the lemma covers.
bool centralizer_lemma_applies(const GroupTable& G, Rank u);
/// C_G(u) = <u> Z(G).
bool centralizer_lemma(const GroupTable& G, Rank u);

/// exp G = 2^e and exp G' = 2^{e-1}.
bool exponents(const GroupTable& G, unsigned e);

bool congruences(const CongruenceParams& c);

/// Outcome of checking both directions of the basis-change lemma on one
/// instance.
struct BasisChangeOutcome {
  bool holds = true;
  bool witnessed = false;  // (x, y) admits a witness
};
BasisChangeOutcome basis_change(const GroupTable& G, const Automorphism& theta, Rank x, Rank y);

}  // namespace beauville::cli::identities
