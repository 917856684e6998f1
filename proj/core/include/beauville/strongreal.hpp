#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "beauville/beauville.hpp"
#include "beauville/families.hpp"
#include "beauville/pcgroup.hpp"

namespace beauville {

/// An automorphism, stored as the images of the pc generators. A full
/// image table can be attached for O(1) application.
class Automorphism {
 public:
  Automorphism() = default;
  explicit Automorphism(std::vector<Rank> images) : images_(std::move(images)) {}

  const std::vector<Rank>& images() const { return images_; }
  Rank apply(const GroupTable& G, Rank r) const;
  Element apply(const GroupTable& G, const Element& u) const;

  void materialize(const GroupTable& G);
  bool materialized() const { return !table_.empty(); }
  const std::vector<Rank>& table() const { return table_; }

  bool is_identity(const GroupTable& G) const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Automorphism& a, const Automorphism& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Rank> images_;
  std::vector<Rank> table_;
};

/// The map g_i -> images[i] when it respects every relation of the pc
/// presentation and its image generates G.
std::optional<Automorphism> automorphism_from_images(const GroupTable& G, std::vector<Rank> images);

/// Extends x -> ix, y -> iy from the distinguished pair; derived generators
/// follow their definitions. Empty when the result is not an automorphism.
std::optional<Automorphism> extend_to_automorphism(const GroupTable& G, Rank ix, Rank iy);

/// theta o phi
Automorphism compose(const GroupTable& G, const Automorphism& theta, const Automorphism& phi);
Automorphism inverse(const GroupTable& G, const Automorphism& theta);

/// x -> x^-1, y -> y^-1 on the distinguished pair, when that extends.
std::optional<Automorphism> inversion_automorphism(const GroupTable& G);

struct BruteForceOptions {
  std::uint64_t max_order = std::uint64_t{1} << 10;
  unsigned workers = 1;
  bool materialize = true;
};

/// Aut(G) by extending every candidate image pair of the distinguished
/// generators. Sorted by images. Throws TooLarge above opts.max_order.
std::vector<Automorphism> brute_force_automorphisms(const GroupTable& G, const BruteForceOptions& opts = {});

// -- Parametrised families --------------------------------------------------

/// a -> b^{m p^{e-i}} a^n, b -> b^{1 + r p^{e-i}} a^s on a Metacyclic group,
/// with 1 <= m, r <= p^i, 1 <= n, s <= p^e and p not dividing n. Empty if
/// the map fails to be an automorphism. Throws InvalidParams or NotInFamily.
std::optional<Automorphism> metacyclic_aut(const GroupTable& G, const Metacyclic& params, std::int64_t m,
                                           std::int64_t n, std::int64_t r, std::int64_t s);

/// a -> a^{1 + m p^{e-i}} b^n c_a, b -> a^{r p^{e-i}} b^s c_b on a
/// Class2Beauville group with 0 < k < j <= i <= e, 1 <= m, n, r, s <= p^i,
/// p not dividing s and c_a, c_b in G'.
std::optional<Automorphism> class2_aut(const GroupTable& G, const Class2Beauville& params, std::int64_t m,
                                       std::int64_t n, std::int64_t r, std::int64_t s, Rank c_a, Rank c_b);

/// Every map of the metacyclic family, verified, deduplicated and sorted.
/// `failures` receives the parameter tuples whose map is not an automorphism.
std::vector<Automorphism> metacyclic_family(const GroupTable& G, const Metacyclic& params,
                                            std::vector<std::array<std::int64_t, 4>>* failures = nullptr);

/// Image sets of the two generators under the family maps. The parameters
/// of a and b vary independently, so a map belongs to the family exactly
/// when theta(a) lies in the first set and theta(b) in the second.
std::pair<ElementSet, ElementSet> metacyclic_family_sets(const GroupTable& G, const Metacyclic& params);
std::pair<ElementSet, ElementSet> class2_family_sets(const GroupTable& G, const Class2Beauville& params);

// -- Action on G / Phi(G) -----------------------------------------------------

/// Matrix over Z/p; column c holds the coordinates of the image of basis
/// vector c.
struct Matrix2 {
  std::array<std::array<std::uint32_t, 2>, 2> m{};

  bool is_identity() const { return m[0][0] == 1 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1; }
  bool is_minus_identity(std::uint32_t p) const {
    return m[0][0] == (p - 1) % p && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == (p - 1) % p;
  }
  friend auto operator<=>(const Matrix2&, const Matrix2&) = default;
};

Matrix2 induced_matrix_mod_frattini(const GroupTable& G, const Automorphism& theta);

// -- Strong reality ----------------------------------------------------------

struct WitnessOptions {
  /// Above this order the scan runs over one coset of C_G(x^-1) only.
  std::uint64_t scan_cap = std::uint64_t{1} << 16;
};

/// Some g with theta(x) = (x^-1)^g and theta(y) = (y^-1)^g, where
/// u^g = g^-1 u g. Candidates are first filtered by conjugacy class.
std::optional<Rank> inversion_witness(const GroupTable& G, const Automorphism& theta, Rank x, Rank y,
                                      const WitnessOptions& opts = {});

/// Predicate behind inversion_witness for a given g.
bool is_inversion_witness(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank g);

/// The two bases that replace {x, y}: (xy, x) or (xy, y).
enum class Basis { xy_x, xy_y };

/// Turns a witness h for (xy, b) into one for (x, y): g = x^-1 h when b = x
/// and g = y h when b = y. Throws NotAWitness if h does not witness (xy, b).
Rank lemma33_transfer(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank h, Basis basis);

/// The opposite direction: h = x g for (xy, x) and h = y^-1 g for (xy, y).
Rank lemma33_forward(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank g, Basis basis);

struct StrongRealWitness {
  Automorphism theta;
  Rank g1 = 0;
  Rank g2 = 0;
};

/// theta is an automorphism and g_i theta(v) g_i^-1 = v^-1 for both entries
/// of both pairs.
bool verify_strong_real(const GroupTable& G, const BeauvilleStructure& s, const StrongRealWitness& w);

/// First automorphism in `auts` (in order) admitting witnesses for both
/// pairs, with the first witnesses in rank order.
std::optional<StrongRealWitness> find_strong_real_witness(const GroupTable& G, const BeauvilleStructure& s,
                                                          const std::vector<Automorphism>& auts);

// -- Triangle-group quotient ---------------------------------------------------

enum class Side { x_side, y_side };

struct DefectResult {
  Rank defect = 0;      // a theta(a)
  Rank candidate = 0;   // y^{2kn - j} or x^{-2km - i}
  Rank commutator = 0;  // [a^-1, candidate]
  bool holds() const { return defect == commutator; }
};

/// For a = x^i y^j z^k (times central factors) with i odd, or
/// b = y^j x^i z^k with j odd, under the inversion automorphism.
/// Throws NotTriangleQuotient or WrongForm.
DefectResult lemma34_defect(const GroupTable& G, Rank a, Side side);

struct CongruenceParams {
  unsigned e = 2;
  std::int64_t i1 = 0, j1 = 0, k1 = 0;
  std::int64_t i2 = 0, j2 = 0, k2 = 0;
  std::int64_t n = 1, m = 1;  // inverses of 1 + 2 i1 and 1 + 2 j2 mod 2^e
};

/// Fills n and m from the other fields.
CongruenceParams with_inverses(CongruenceParams c);

/// (R, S) in [0, 2^e) solving
///   (1 + 2 i1) S == 2 i2 (R - 1) - 2 k2 m            (mod 2^e)
///   2 j1 (S - 1) + 2 k1 n == (1 + 2 j2) R            (mod 2^e)
/// by eliminating S; the coefficient of R is odd.
std::pair<std::int64_t, std::int64_t> solve_RS(const CongruenceParams& c);

bool powers_of_x_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S);
bool powers_of_y_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S);
/// (1 + 2 i1) j1 S (S - 1) + k1 S == (1 + 2 j2) i2 R (R - 1) - k2 R (mod 2^{e-1})
bool powers_of_z_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S);

struct TheoremBResult {
  StrongRealWitness witness;
  /// The constructive element verified without help.
  bool constructive = true;
  /// Set when the g-scan had to replace the constructive element.
  bool used_fallback = false;
};

/// Constructs strongly-real witnesses on a triangle-group quotient. Caches
/// the basis-change automorphism of each first pair, so one solver should
/// be reused across structures that share it. Not thread-safe.
class TheoremBSolver {
 public:
  /// Throws NotTriangleQuotient.
  explicit TheoremBSolver(const GroupTable& G);
  ~TheoremBSolver();

  /// Throws WitnessVerificationFailed when neither the constructive element
  /// nor the g-scan verifies.
  TheoremBResult solve(const BeauvilleStructure& s);

  /// The congruence data and constructive element for u, v with u in
  /// <x, Phi> \ Phi and v in <y, Phi> \ Phi, for the inversion automorphism.
  struct Construction {
    CongruenceParams params;
    std::int64_t R = 0, S = 0;
    Rank g = 0;
  };
  Construction construct_for(Rank u, Rank v) const;

 private:
  struct Frame;
  const Frame& frame_for(GeneratingPair p1);

  const GroupTable& G_;
  unsigned e_ = 2;
  Automorphism inversion_;
  std::map<GeneratingPair, std::unique_ptr<Frame>> cache_;
};

/// Convenience wrapper around a one-off TheoremBSolver.
TheoremBResult theorem_b_witness(const GroupTable& G, const BeauvilleStructure& s);

// -- Classification ------------------------------------------------------------

enum class StrongRealClass { purely_strongly_real, purely_non_strongly_real, mixed, not_beauville, unknown };

const char* to_string(StrongRealClass c);

struct ClassifyOptions {
  /// Largest order for which every generating pair is examined.
  std::uint64_t max_order = std::uint64_t{1} << 12;
  unsigned workers = 1;
};

struct Classification {
  StrongRealClass verdict = StrongRealClass::unknown;
  std::uint64_t generating_pairs = 0;
  /// Automorphisms inducing -1 on G/Phi(G); no other can carry a witness.
  std::uint64_t candidate_automorphisms = 0;
  std::uint64_t structures = 0;
  std::uint64_t strongly_real = 0;
  bool counted = false;  // structures and strongly_real are exact
  std::optional<BeauvilleStructure> real_example;
  std::optional<StrongRealWitness> real_witness;
  std::optional<BeauvilleStructure> non_real_example;
};

/// Decides for every Beauville structure whether some theta in `auts` with
/// elements g1, g2 makes it strongly real, and aggregates. Structures are
/// counted by grouping generating pairs by (Sigma signature, set of
/// automorphisms admitting a witness).
Classification classify_structures(const GroupTable& G, const std::vector<Automorphism>& auts,
                                   const ClassifyOptions& opts = {});

}  // namespace beauville
