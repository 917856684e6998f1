#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "beauville/element_set.hpp"
#include "beauville/presentation.hpp"

namespace beauville {

/// Collected normal form g_1^{e_1} ... g_n^{e_n} with 0 <= e_i < r_i.
struct Element {
  std::vector<std::uint64_t> exps;

  bool is_identity() const {
    for (auto e : exps)
      if (e) return false;
    return true;
  }
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct BuildOptions {
  /// Largest group for which rank tables and ElementSets are materialised.
  std::uint64_t size_cap = std::uint64_t{1} << 24;
  /// Largest number of multiplication-table entries (4 bytes each).
  std::uint64_t table_entry_cap = std::uint64_t{1} << 27;
  /// Above the caps: throw TooLarge unless this is set, in which case the
  /// group supports Element arithmetic by collection only.
  bool allow_oversize = false;
  /// Generator-associativity probe is exhaustive up to this order and
  /// randomised above it.
  std::uint64_t exhaustive_probe_limit = std::uint64_t{1} << 12;
  std::uint64_t random_probe_triples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Coordinates of G/Phi(G) = (Z/p)^2 in a fixed basis. Only available for
/// 2-generated groups.
struct FrattiniQuotient {
  bool available = false;
  unsigned rank = 0;  // log_p |G : Phi(G)|
  std::pair<Rank, Rank> basis{0, 0};
  std::vector<std::uint32_t> coset;               // rank -> coset label
  std::vector<std::array<std::uint32_t, 2>> coords;  // label -> coordinates

  std::array<std::uint32_t, 2> of(Rank r) const { return coords[coset[r]]; }
};

struct RegularityCheck {
  bool regular = false;
  bool sampled = false;  // true when not every pair was examined
  std::uint64_t pairs_checked = 0;
};

class Collector;

/// A finite p-group built from a consistent power-conjugate presentation.
///
/// Immutable after construction. Lazily computed data (characteristic
/// subgroups, conjugacy classes, element orders) is built once under
/// std::call_once, so a table can be shared between threads.
///
/// Elements of groups within the size cap are usually handled by rank: the
/// mixed-radix encoding of the exponent vector with the last generator
/// varying fastest.
class GroupTable {
 public:
  GroupTable(GroupTable&&) noexcept;
  GroupTable& operator=(GroupTable&&) noexcept;
  ~GroupTable();

  const PcPresentation& presentation() const { return pres_; }
  const BuildOptions& options() const { return opts_; }
  std::uint32_t prime() const { return pres_.prime; }
  std::size_t num_gens() const { return n_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t rel_order(std::size_t i) const { return orders_[i]; }
  /// True when rank arithmetic and ElementSets are available.
  bool tabled() const { return tabled_; }

  // -- Elements ------------------------------------------------------------
  Element identity() const;
  Element generator(std::size_t i) const;
  /// Validates a normal-form exponent vector. Throws InvalidParams.
  Element element(std::vector<std::uint64_t> exps) const;
  bool valid(const Element& u) const;
  std::uint64_t rank(const Element& u) const;
  Element unrank(std::uint64_t r) const;

  Element multiply(const Element& u, const Element& v) const;
  Element invert(const Element& u) const;
  Element power_of(const Element& u, std::int64_t k) const;
  /// g^-1 u g
  Element conjugate(const Element& u, const Element& g) const;
  /// u^-1 v^-1 u v
  Element commutator(const Element& u, const Element& v) const;
  std::uint64_t order_of(const Element& u) const;
  /// Product by direct collection, bypassing the tables.
  Element multiply_by_collection(const Element& u, const Element& v) const;

  // -- Rank arithmetic (tabled groups) --------------------------------------
  Rank gen_rank(std::size_t i) const { return static_cast<Rank>(stride_[i]); }
  std::uint64_t digit(Rank r, std::size_t i) const { return (r / stride_[i]) % orders_[i]; }
  Rank mul(Rank x, Rank v) const;
  Rank inv(Rank x) const;
  Rank pow(Rank x, std::int64_t k) const;
  Rank conj(Rank u, Rank g) const { return mul(mul(inv(g), u), g); }
  Rank comm(Rank u, Rank v) const { return mul(mul(inv(u), inv(v)), mul(u, v)); }
  std::uint64_t order_of(Rank x) const;

  /// Evaluates a word; `images`, when given, replaces each pc generator.
  Rank evaluate(const Word& w, std::span<const Rank> images = {}) const;
  Element evaluate_element(const Word& w, std::span<const Element> images = {}) const;

  // -- Distinguished pair -----------------------------------------------------
  std::optional<std::pair<Rank, Rank>> distinguished() const;
  /// Images of every pc generator under x -> ix, y -> iy, following the
  /// presentation's definitions. Empty if some generator is undefined.
  std::optional<std::vector<Rank>> generator_images(Rank ix, Rank iy) const;

  // -- Subgroups ---------------------------------------------------------------
  ElementSet subgroup_generated(std::span<const Rank> gens) const;
  ElementSet normal_closure(std::span<const Rank> gens) const;
  ElementSet all_elements() const;
  const ElementSet& center() const;
  const ElementSet& derived() const;
  const ElementSet& frattini() const;
  /// Subgroup generated by all p^k-th powers.
  ElementSet agemo(unsigned k) const;
  ElementSet centralizer(Rank u) const;
  std::uint64_t exponent() const;
  unsigned nilpotency_class() const;
  bool is_powerful() const;
  /// Exhaustive over all pairs when |G|^2 <= pair_limit, seeded sample of
  /// `samples` pairs otherwise.
  RegularityCheck is_regular(std::uint64_t pair_limit = std::uint64_t{1} << 16,
                             std::uint64_t samples = 4096, std::uint64_t seed = 0) const;

  std::span<const std::uint32_t> element_orders() const;
  /// Conjugacy class label of every element, labels numbered by first
  /// occurrence in rank order (so the identity is class 0).
  std::span<const std::uint32_t> class_ids() const;
  std::uint32_t num_classes() const;
  const FrattiniQuotient& frattini_quotient() const;

  std::size_t memory_bytes() const;

 private:
  friend GroupTable build_group(const PcPresentation&, const BuildOptions&);
  GroupTable() = default;

  void require_tabled(const char* what) const;
  Rank mul_gen_power(Rank x, std::size_t j, std::uint64_t e) const;
  Rank inv_digits(Rank x) const;
  void build_tables();
  void check_consistency() const;

  struct Caches;

  PcPresentation pres_;
  BuildOptions opts_;
  std::size_t n_ = 0;
  std::uint64_t order_ = 1;
  bool tabled_ = false;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint64_t> stride_;
  std::vector<unsigned> digits_;       // r_j = p^{digits_[j]}
  std::vector<std::size_t> table_base_;
  std::vector<Rank> right_;            // right multiplication by g_j^{d p^s}
  std::vector<Rank> inverse_;
  std::unique_ptr<Collector> collector_;
  std::unique_ptr<Caches> caches_;
};

/// Builds the group and runs the consistency check. Throws
/// InconsistentPresentation, TooLarge or InvalidParams.
GroupTable build_group(const PcPresentation& pres, const BuildOptions& opts = {});

/// Everything the characteristic-subgroup operation reports, gathered.
struct CharacteristicData {
  ElementSet frattini;
  ElementSet center;
  ElementSet derived;
  std::vector<ElementSet> agemo;  // agemo[k] for k = 0 .. log_p exp G
  std::uint64_t exponent = 1;
  unsigned nilpotency_class = 0;
  bool powerful = false;
  RegularityCheck regular;
};

CharacteristicData characteristic_subgroups(const GroupTable& G);

}  // namespace beauville
