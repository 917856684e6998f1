#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "beauville/presentation.hpp"

namespace beauville {

/// Table-free collection from the left on exponent vectors.
///
/// Right-multiplying a normal form by g_j^c only touches positions >= j: the
/// tail after g_j is conjugated by g_j^c (a product inside G_{j+1}), and an
/// overflowing exponent of g_j is replaced by its power relation. The
/// recursion bottoms out because every relation lives in a later subgroup.
/// Conjugation by g_j^c is applied bit by bit from cached images of the
/// later generators under conjugation by g_j^{2^k}.
class Collector {
 public:
  using Exps = std::vector<std::uint64_t>;

  explicit Collector(const PcPresentation& pres);

  std::size_t size() const { return n_; }
  Exps identity() const { return Exps(n_, 0); }
  Exps multiply(Exps a, const Exps& b) const;
  Exps invert(const Exps& a) const;
  Exps power(const Exps& a, std::uint64_t k) const;
  Exps evaluate(const Word& w, std::span<const Exps> images = {}) const;

  const Exps& power_word(std::size_t j) const { return power_nf_[j]; }
  const Exps& conj_word(std::size_t j, std::size_t l) const { return conj_nf_[j][l]; }

 private:
  Exps mul_gen_power(Exps a, std::size_t j, std::uint64_t c) const;
  /// v^(g_j^(2^k)) for v inside G_{j+1}.
  Exps conjugate_tail(const Exps& v, std::size_t j, std::size_t k) const;

  std::size_t n_;
  std::vector<std::uint64_t> orders_;
  std::vector<Exps> power_nf_;
  std::vector<std::vector<Exps>> conj_nf_;
  // conj_pow2_[j][k][l] = g_l^(g_j^(2^k)) for l > j
  std::vector<std::vector<std::vector<Exps>>> conj_pow2_;
};

}  // namespace beauville
