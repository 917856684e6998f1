#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "beauville/element_set.hpp"
#include "beauville/errors.hpp"
#include "beauville/pcgroup.hpp"

namespace beauville {

struct GeneratingPair {
  Rank x = 0;
  Rank y = 0;

  /// The same unordered pair with x <= y.
  GeneratingPair canonical() const { return x <= y ? *this : GeneratingPair{y, x}; }
  friend auto operator<=>(const GeneratingPair&, const GeneratingPair&) = default;
};

struct BeauvilleStructure {
  GeneratingPair pair1;
  GeneratingPair pair2;

  /// Canonical pairs, ordered so that pair1 < pair2.
  BeauvilleStructure canonical() const;
  friend auto operator<=>(const BeauvilleStructure&, const BeauvilleStructure&) = default;
};

/// Union of all conjugates of <x>, <y> and <xy>.
ElementSet sigma(const GroupTable& G, Rank x, Rank y);

/// <x, y> = G. Uses coordinates in G/Phi(G) when the quotient has rank 2,
/// closure otherwise.
bool is_generating_pair(const GroupTable& G, Rank x, Rank y);
bool generates_by_closure(const GroupTable& G, Rank x, Rank y);

/// Both pairs generate and their Sigma sets meet only in the identity.
/// Evaluated directly from the Sigma sets.
bool is_beauville_structure(const GroupTable& G, GeneratingPair p1, GeneratingPair p2);

/// Compressed Sigma sets for disjointness tests.
///
/// Sigma(x, y) is a union of conjugacy classes closed under taking powers,
/// so two Sigma sets share a non-identity element exactly when they share a
/// class of elements of order p. The signature of a pair is that set of
/// classes, as a bit vector over the classes of order-p elements.
class SigmaIndex {
 public:
  using Signature = std::vector<std::uint64_t>;

  explicit SigmaIndex(const GroupTable& G);

  Signature of(Rank x, Rank y) const;
  bool disjoint(const Signature& a, const Signature& b) const;
  std::size_t num_prime_classes() const { return prime_classes_; }

 private:
  void add(Signature& s, Rank u) const;

  const GroupTable* G_;
  std::size_t prime_classes_ = 0;
  std::size_t words_ = 0;
  // Signature of <u> for every element u, flattened.
  std::vector<std::uint64_t> cyclic_;
};

enum class SearchStrategy { deterministic_scan, seeded_random };

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::deterministic_scan;
  std::uint64_t seed = 0;
  /// Pair candidates examined before giving up; 0 means no limit. The
  /// seeded sampler defaults to 100000 when left at 0.
  std::uint64_t budget = 0;
  unsigned workers = 1;
};

struct SearchResult {
  Tri found = Tri::unknown;
  std::optional<BeauvilleStructure> structure;
  /// The verdict covers every generating pair (up to conjugation).
  bool exhaustive = false;
  std::uint64_t pairs_examined = 0;
  std::size_t distinct_signatures = 0;
};

/// deterministic_scan fixes pair1 to the distinguished pair and scans pair2
/// in rank order; when that fails it scans pair1 over one representative of
/// every signature, which settles existence. seeded_random draws pairs of
/// pairs and can only report yes or unknown. A returned structure always
/// passes is_beauville_structure.
SearchResult find_beauville_structure(const GroupTable& G, const SearchOptions& opts = {});

/// yes or no after an exhaustive search, unknown when the budget ran out.
Tri is_beauville_group(const GroupTable& G, const SearchOptions& opts = {});

/// Every unordered generating pair {x, y}, x < y, in rank order.
std::vector<GeneratingPair> generating_pairs(const GroupTable& G);

struct EnumerationOptions {
  std::uint64_t max_order = std::uint64_t{1} << 12;
  unsigned workers = 1;
};

/// Calls `emit` once for every Beauville structure {pair1, pair2} of
/// unordered generating pairs, in increasing canonical order, and returns
/// the count. Throws TooLarge above opts.max_order.
std::uint64_t enumerate_beauville_structures(const GroupTable& G,
                                             const std::function<void(const BeauvilleStructure&)>& emit,
                                             const EnumerationOptions& opts = {});

}  // namespace beauville
