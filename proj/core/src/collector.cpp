#include "collector.hpp"

namespace beauville {

Collector::Collector(const PcPresentation& pres)
    : n_(pres.size()), orders_(pres.rel_orders) {
  power_nf_.assign(n_, identity());
  conj_nf_.assign(n_, std::vector<Exps>(n_, identity()));
  conj_pow2_.assign(n_, {});
  // Bottom-up: relations of level j only need arithmetic in G_{j+1}.
  for (std::size_t j = n_; j-- > 0;) {
    power_nf_[j] = evaluate(pres.power_rels[j]);
    for (std::size_t l = j + 1; l < n_; ++l) {
      auto it = pres.conj_rels.find({static_cast<int>(j), static_cast<int>(l)});
      if (it == pres.conj_rels.end()) {
        conj_nf_[j][l][l] = 1;
      } else {
        conj_nf_[j][l] = evaluate(it->second);
      }
    }
    conj_pow2_[j].push_back(conj_nf_[j]);
    for (std::uint64_t step = 2; step < orders_[j]; step *= 2) {
      const std::size_t k = conj_pow2_[j].size() - 1;
      std::vector<Exps> next(n_, identity());
      for (std::size_t l = j + 1; l < n_; ++l) next[l] = conjugate_tail(conj_pow2_[j][k][l], j, k);
      conj_pow2_[j].push_back(std::move(next));
    }
  }
}

Collector::Exps Collector::conjugate_tail(const Exps& v, std::size_t j, std::size_t k) const {
  Exps out = identity();
  for (std::size_t l = j + 1; l < n_; ++l)
    if (v[l]) out = multiply(std::move(out), power(conj_pow2_[j][k][l], v[l]));
  return out;
}

Collector::Exps Collector::mul_gen_power(Exps a, std::size_t j, std::uint64_t c) const {
  // a = h g_j^{a_j} T  with T in G_{j+1};  a g_j^c = h g_j^{a_j + c} T^(g_j^c).
  Exps tail = identity();
  bool nontrivial = false;
  for (std::size_t l = j + 1; l < n_; ++l) {
    tail[l] = a[l];
    nontrivial = nontrivial || a[l];
  }
  if (nontrivial)
    for (std::size_t k = 0; (c >> k) != 0; ++k)
      if ((c >> k) & 1) tail = conjugate_tail(tail, j, k);
  std::uint64_t ej = a[j] + c;
  if (ej < orders_[j]) {
    a[j] = ej;
  } else {
    a[j] = ej - orders_[j];
    tail = multiply(power_nf_[j], tail);
  }
  for (std::size_t l = j + 1; l < n_; ++l) a[l] = tail[l];
  return a;
}

Collector::Exps Collector::multiply(Exps a, const Exps& b) const {
  for (std::size_t j = 0; j < n_; ++j)
    if (b[j]) a = mul_gen_power(std::move(a), j, b[j]);
  return a;
}

Collector::Exps Collector::power(const Exps& a, std::uint64_t k) const {
  Exps result = identity();
  Exps base = a;
  while (k) {
    if (k & 1) result = multiply(std::move(result), base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

Collector::Exps Collector::invert(const Exps& a) const {
  // Choose the digits of the inverse one position at a time so that the
  // running product has a zero prefix.
  Exps cur = a;
  Exps inv = identity();
  for (std::size_t j = 0; j < n_; ++j) {
    std::uint64_t c = (orders_[j] - cur[j]) % orders_[j];
    inv[j] = c;
    if (c) cur = mul_gen_power(std::move(cur), j, c);
  }
  return inv;
}

Collector::Exps Collector::evaluate(const Word& w, std::span<const Exps> images) const {
  Exps result = identity();
  for (const auto& t : w.terms) {
    Exps val;
    switch (t.kind) {
      case WordTerm::Kind::generator:
        if (images.empty()) {
          val = identity();
          val[t.gen] = 1;
        } else {
          val = images[t.gen];
        }
        break;
      case WordTerm::Kind::commutator: {
        val = evaluate(t.args[0], images);
        for (std::size_t k = 1; k < t.args.size(); ++k) {
          Exps b = evaluate(t.args[k], images);
          val = multiply(multiply(invert(val), invert(b)), multiply(val, b));
        }
        break;
      }
      case WordTerm::Kind::group:
        val = evaluate(t.args[0], images);
        break;
    }
    if (t.exp < 0) {
      val = power(invert(val), static_cast<std::uint64_t>(-t.exp));
    } else {
      val = power(val, static_cast<std::uint64_t>(t.exp));
    }
    result = multiply(std::move(result), val);
  }
  return result;
}

}  // namespace beauville
