#pragma once

#include <random>

#include "beauville/strongreal.hpp"

namespace beauville::cli {

inline Rank random_element(const GroupTable& G, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Rank>(0, static_cast<Rank>(G.order() - 1))(rng);
}

/// Uniform over generating pairs; G must be 2-generated.
inline GeneratingPair random_generating_pair(const GroupTable& G, std::mt19937_64& rng) {
  for (;;) {
    GeneratingPair p{random_element(G, rng), random_element(G, rng)};
    if (is_generating_pair(G, p.x, p.y)) return p;
  }
}

/// Uniform over Aut(G): images of the distinguished pair are drawn until they
/// extend. Empty after `max_draws` failures.
inline std::optional<Automorphism> random_automorphism(const GroupTable& G, std::mt19937_64& rng,
                                                       std::uint64_t max_draws = 1'000'000) {
  for (std::uint64_t k = 0; k < max_draws; ++k) {
    Rank u = random_element(G, rng), v = random_element(G, rng);
    if (auto theta = extend_to_automorphism(G, u, v)) return theta;
  }
  return std::nullopt;
}

}  // namespace beauville::cli
