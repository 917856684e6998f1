#include "beauville/pcgroup.hpp"

#include <limits>
#include <random>
#include <string>

#include "beauville/errors.hpp"
#include "caches.hpp"
#include "collector.hpp"

namespace beauville {

GroupTable::GroupTable(GroupTable&&) noexcept = default;
GroupTable& GroupTable::operator=(GroupTable&&) noexcept = default;
GroupTable::~GroupTable() = default;

void GroupTable::require_tabled(const char* what) const {
  if (!tabled_)
    throw TooLarge(std::string(what) + " needs a materialised group; order " +
                   std::to_string(order_) + " exceeds the size cap");
}

// ---------------------------------------------------------------------------
// Elements

Element GroupTable::identity() const { return Element{std::vector<std::uint64_t>(n_, 0)}; }

Element GroupTable::generator(std::size_t i) const {
  Element g = identity();
  g.exps.at(i) = 1;
  return g;
}

bool GroupTable::valid(const Element& u) const {
  if (u.exps.size() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (u.exps[i] >= orders_[i]) return false;
  return true;
}

Element GroupTable::element(std::vector<std::uint64_t> exps) const {
  Element u{std::move(exps)};
  if (!valid(u)) throw InvalidParams("exponent vector is not a normal form for this group");
  return u;
}

std::uint64_t GroupTable::rank(const Element& u) const {
  if (!valid(u)) throw InvalidParams("element does not belong to this group");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n_; ++i) r += u.exps[i] * stride_[i];
  return r;
}

Element GroupTable::unrank(std::uint64_t r) const {
  if (r >= order_) throw InvalidParams("rank out of range");
  Element u = identity();
  for (std::size_t i = 0; i < n_; ++i) u.exps[i] = (r / stride_[i]) % orders_[i];
  return u;
}

Element GroupTable::multiply(const Element& u, const Element& v) const {
  if (tabled_) return unrank(mul(static_cast<Rank>(rank(u)), static_cast<Rank>(rank(v))));
  return Element{collector_->multiply(u.exps, v.exps)};
}

Element GroupTable::multiply_by_collection(const Element& u, const Element& v) const {
  return Element{collector_->multiply(u.exps, v.exps)};
}

Element GroupTable::invert(const Element& u) const {
  if (tabled_) return unrank(inv(static_cast<Rank>(rank(u))));
  return Element{collector_->invert(u.exps)};
}

Element GroupTable::power_of(const Element& u, std::int64_t k) const {
  if (tabled_) return unrank(pow(static_cast<Rank>(rank(u)), k));
  if (k < 0) return Element{collector_->power(collector_->invert(u.exps), static_cast<std::uint64_t>(-k))};
  return Element{collector_->power(u.exps, static_cast<std::uint64_t>(k))};
}

Element GroupTable::conjugate(const Element& u, const Element& g) const {
  return multiply(multiply(invert(g), u), g);
}

Element GroupTable::commutator(const Element& u, const Element& v) const {
  return multiply(multiply(invert(u), invert(v)), multiply(u, v));
}

std::uint64_t GroupTable::order_of(const Element& u) const {
  if (tabled_) return order_of(static_cast<Rank>(rank(u)));
  std::uint64_t o = 1;
  Element y = u;
  while (!y.is_identity()) {
    y = power_of(y, prime());
    o *= prime();
  }
  return o;
}

// ---------------------------------------------------------------------------
// Rank arithmetic

Rank GroupTable::mul_gen_power(Rank x, std::size_t j, std::uint64_t e) const {
  const std::uint32_t p = prime();
  const std::size_t N = order_;
  std::size_t t = table_base_[j];
  while (e) {
    std::uint64_t d = e % p;
    if (d) x = right_[(t + d - 1) * N + x];
    e /= p;
    t += p - 1;
  }
  return x;
}

Rank GroupTable::mul(Rank x, Rank v) const {
  for (std::size_t j = 0; j < n_ && v; ++j) {
    std::uint64_t e = v / stride_[j];
    v -= static_cast<Rank>(e * stride_[j]);
    if (e) x = mul_gen_power(x, j, e);
  }
  return x;
}

Rank GroupTable::inv_digits(Rank x) const {
  Rank cur = x;
  Rank y = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    std::uint64_t d = digit(cur, j);
    if (!d) continue;
    std::uint64_t c = orders_[j] - d;
    y += static_cast<Rank>(c * stride_[j]);
    cur = mul_gen_power(cur, j, c);
  }
  return y;
}

Rank GroupTable::inv(Rank x) const { return inverse_.empty() ? inv_digits(x) : inverse_[x]; }

Rank GroupTable::pow(Rank x, std::int64_t k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Rank result = 0;
  auto e = static_cast<std::uint64_t>(k);
  while (e) {
    if (e & 1) result = mul(result, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return result;
}

std::uint64_t GroupTable::order_of(Rank x) const {
  if (caches_->orders_ready.load(std::memory_order_acquire)) return caches_->orders[x];
  std::uint64_t o = 1;
  while (x) {
    x = pow(x, prime());
    o *= prime();
  }
  return o;
}

Rank GroupTable::evaluate(const Word& w, std::span<const Rank> images) const {
  require_tabled("rank evaluation");
  Rank result = 0;
  for (const auto& t : w.terms) {
    Rank val = 0;
    switch (t.kind) {
      case WordTerm::Kind::generator:
        val = images.empty() ? gen_rank(t.gen) : images[t.gen];
        break;
      case WordTerm::Kind::commutator:
        val = evaluate(t.args[0], images);
        for (std::size_t k = 1; k < t.args.size(); ++k) val = comm(val, evaluate(t.args[k], images));
        break;
      case WordTerm::Kind::group:
        val = evaluate(t.args[0], images);
        break;
    }
    result = mul(result, pow(val, t.exp));
  }
  return result;
}

Element GroupTable::evaluate_element(const Word& w, std::span<const Element> images) const {
  if (tabled_) {
    std::vector<Rank> r;
    r.reserve(images.size());
    for (const auto& e : images) r.push_back(static_cast<Rank>(rank(e)));
    return unrank(evaluate(w, r));
  }
  std::vector<Collector::Exps> ex;
  ex.reserve(images.size());
  for (const auto& e : images) ex.push_back(e.exps);
  return Element{collector_->evaluate(w, ex)};
}

// ---------------------------------------------------------------------------
// Distinguished pair

std::optional<std::pair<Rank, Rank>> GroupTable::distinguished() const {
  if (!pres_.pair) return std::nullopt;
  return std::pair{gen_rank(pres_.pair->first), gen_rank(pres_.pair->second)};
}

std::optional<std::vector<Rank>> GroupTable::generator_images(Rank ix, Rank iy) const {
  require_tabled("generator_images");
  if (!pres_.pair) return std::nullopt;
  std::vector<Rank> img(n_, 0);
  std::vector<bool> done(n_, false);
  img[pres_.pair->first] = ix;
  img[pres_.pair->second] = iy;
  done[pres_.pair->first] = done[pres_.pair->second] = true;

  auto ready = [&](const Word& w) {
    auto check = [&](auto&& self, const Word& u) -> bool {
      for (const auto& t : u.terms) {
        if (t.kind == WordTerm::Kind::generator) {
          if (!done[t.gen]) return false;
        } else {
          for (const auto& a : t.args)
            if (!self(self, a)) return false;
        }
      }
      return true;
    };
    return check(check, w);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [k, w] : pres_.defs) {
      if (done[k] || !ready(w)) continue;
      img[k] = evaluate(w, img);
      done[k] = true;
      progress = true;
    }
  }
  for (std::size_t k = 0; k < n_; ++k)
    if (!done[k]) return std::nullopt;
  return img;
}

// ---------------------------------------------------------------------------
// Construction

void GroupTable::build_tables() {
  const std::uint32_t p = prime();
  const std::size_t N = order_;
  std::size_t ntables = 0;
  table_base_.assign(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    table_base_[j] = ntables;
    ntables += digits_[j] * (p - 1);
  }
  right_.assign(ntables * N, 0);
  auto table = [&](std::size_t j, unsigned s, std::uint64_t d) {
    return right_.data() + (table_base_[j] + s * (p - 1) + d - 1) * N;
  };

  // Bottom-up: when level j is built, right multiplication by every later
  // generator is already complete on the whole group.
  for (std::size_t j = n_; j-- > 0;) {
    const Rank power_word = evaluate(pres_.power_rels[j]);
    std::vector<std::vector<Rank>> conj_pow(n_);
    for (std::size_t l = j + 1; l < n_; ++l) {
      auto it = pres_.conj_rels.find({static_cast<int>(j), static_cast<int>(l)});
      Rank c = it == pres_.conj_rels.end() ? gen_rank(l) : evaluate(it->second);
      conj_pow[l].resize(orders_[l]);
      conj_pow[l][0] = 0;
      for (std::uint64_t e = 1; e < orders_[l]; ++e) conj_pow[l][e] = mul(conj_pow[l][e - 1], c);
    }
    // tail^{g_j} depends only on the digits after position j
    const std::uint64_t tail_count = stride_[j];
    std::vector<Rank> tail(tail_count);
    for (std::uint64_t t = 0; t < tail_count; ++t) {
      Rank acc = 0;
      for (std::size_t l = j + 1; l < n_; ++l) {
        std::uint64_t d = (t / stride_[l]) % orders_[l];
        if (d) acc = mul(acc, conj_pow[l][d]);
      }
      tail[t] = acc;
    }
    Rank* R = table(j, 0, 1);
    const std::uint64_t block = stride_[j] * orders_[j];
    for (std::uint64_t x = 0; x < N; ++x) {
      std::uint64_t prefix = x - x % block;
      std::uint64_t ej = (x / stride_[j]) % orders_[j];
      Rank conj_tail = tail[x % stride_[j]];
      if (ej + 1 < orders_[j]) {
        R[x] = static_cast<Rank>(prefix + (ej + 1) * stride_[j] + conj_tail);
      } else {
        R[x] = static_cast<Rank>(prefix + mul(power_word, conj_tail));
      }
    }
    for (unsigned s = 0; s < digits_[j]; ++s) {
      Rank* base = table(j, s, 1);
      if (s > 0) {
        const Rank* prev_one = table(j, s - 1, 1);
        const Rank* prev_top = table(j, s - 1, p - 1);
        for (std::size_t x = 0; x < N; ++x) base[x] = prev_one[prev_top[x]];
      }
      for (std::uint64_t d = 2; d < p; ++d) {
        Rank* cur = table(j, s, d);
        const Rank* prev = table(j, s, d - 1);
        for (std::size_t x = 0; x < N; ++x) cur[x] = base[prev[x]];
      }
    }
  }
  inverse_.resize(N);
  for (std::size_t x = 0; x < N; ++x) inverse_[x] = inv_digits(static_cast<Rank>(x));
}

void GroupTable::check_consistency() const {
  auto fail = [&](const std::string& what) { throw InconsistentPresentation(what); };
  const auto& g = pres_.gens;

  // Defining relations evaluated on elements.
  for (std::size_t j = 0; j < n_; ++j) {
    Element lhs = power_of(generator(j), static_cast<std::int64_t>(orders_[j]));
    if (lhs != evaluate_element(pres_.power_rels[j]))
      fail("power relation of " + g[j] + " does not hold");
    for (std::size_t l = j + 1; l < n_; ++l) {
      auto it = pres_.conj_rels.find({static_cast<int>(j), static_cast<int>(l)});
      Element rhs = it == pres_.conj_rels.end() ? generator(l) : evaluate_element(it->second);
      if (conjugate(generator(l), generator(j)) != rhs)
        fail("conjugate relation " + g[l] + "^" + g[j] + " does not hold");
    }
  }

  std::mt19937_64 rng(opts_.seed);
  if (tabled_) {
    // The right-multiplication permutations must satisfy every relation at
    // every point. Together with transitivity on normal forms this shows
    // the table is the regular representation of the presented group.
    const std::size_t N = order_;
    const std::uint32_t p = prime();
    for (std::size_t j = 0; j < n_; ++j) {
      Rank w = evaluate(pres_.power_rels[j]);
      // g_j^{p^{s-1}} applied p times
      const Rank* top = right_.data() + (table_base_[j] + (digits_[j] - 1) * (p - 1)) * N;
      for (std::size_t x = 0; x < N; ++x) {
        Rank y = static_cast<Rank>(x);
        for (std::uint32_t k = 0; k < p; ++k) y = top[y];
        if (y != mul(static_cast<Rank>(x), w))
          fail("power relation of " + g[j] + " fails at element " + std::to_string(x));
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const Rank* Ri = right_.data() + table_base_[i] * N;
      for (std::size_t l = i + 1; l < n_; ++l) {
        const Rank* Rl = right_.data() + table_base_[l] * N;
        auto it = pres_.conj_rels.find({static_cast<int>(i), static_cast<int>(l)});
        Rank c = it == pres_.conj_rels.end() ? gen_rank(l) : evaluate(it->second);
        for (std::size_t x = 0; x < N; ++x)
          if (Ri[Rl[x]] != mul(Ri[x], c))
            fail("conjugate relation " + g[l] + "^" + g[i] + " fails at element " +
                 std::to_string(x));
      }
    }

    // Generator-associativity probe (g_i x) y == g_i (x y). A row x*y over
    // all y costs one lookup per entry: y = y' g_j with j the last nonzero
    // digit of y needs no collection, so x y = (x y') g_j.
    std::vector<std::uint8_t> last(N, 0);
    for (std::size_t y = 1; y < N; ++y) {
      std::size_t j = n_ - 1;
      while (digit(static_cast<Rank>(y), j) == 0) --j;
      last[y] = static_cast<std::uint8_t>(j);
    }
    auto row_of = [&](Rank x, std::vector<Rank>& row) {
      row[0] = x;
      for (std::size_t y = 1; y < N; ++y) {
        std::size_t j = last[y];
        row[y] = right_[table_base_[j] * N + row[y - stride_[j]]];
      }
    };
    std::vector<std::vector<Rank>> left(n_, std::vector<Rank>(N));
    for (std::size_t i = 0; i < n_; ++i) row_of(gen_rank(i), left[i]);
    auto fail_at = [&](std::size_t i, Rank x, Rank y) {
      fail("associativity fails for (" + g[i] + ", " + std::to_string(x) + ", " + std::to_string(y) + ")");
    };
    if (order_ <= opts_.exhaustive_probe_limit) {
      std::vector<Rank> row_x(N), row_gx(N);
      for (Rank x = 0; x < N; ++x) {
        row_of(x, row_x);
        for (std::size_t i = 0; i < n_; ++i) {
          row_of(left[i][x], row_gx);
          for (Rank y = 0; y < N; ++y)
            if (row_gx[y] != left[i][row_x[y]]) fail_at(i, x, y);
        }
      }
    } else {
      std::uniform_int_distribution<Rank> pick(0, static_cast<Rank>(N - 1));
      std::uint64_t pairs = (opts_.random_probe_triples + n_ - 1) / std::max<std::size_t>(n_, 1);
      for (std::uint64_t k = 0; k < pairs; ++k) {
        Rank x = pick(rng), y = pick(rng);
        Rank xy = mul(x, y);
        for (std::size_t i = 0; i < n_; ++i)
          if (mul(left[i][x], y) != left[i][xy]) fail_at(i, x, y);
      }
    }
  } else if (n_ > 0) {
    std::uniform_int_distribution<std::size_t> gen_pick(0, n_ - 1);
    auto random_element = [&] {
      Element u = identity();
      for (std::size_t i = 0; i < n_; ++i) u.exps[i] = rng() % orders_[i];
      return u;
    };
    if (order_ <= opts_.exhaustive_probe_limit) {
      for (std::uint64_t rx = 0; rx < order_; ++rx) {
        Element x = unrank(rx);
        for (std::uint64_t ry = 0; ry < order_; ++ry) {
          Element y = unrank(ry);
          Element xy = multiply(x, y);
          for (std::size_t i = 0; i < n_; ++i) {
            Element gi = generator(i);
            if (multiply(multiply(gi, x), y) != multiply(gi, xy))
              fail("associativity fails for (" + g[i] + ", " + std::to_string(rx) + ", " + std::to_string(ry) + ")");
          }
        }
      }
    } else {
      for (std::uint64_t k = 0; k < opts_.random_probe_triples; ++k) {
        Element gi = generator(gen_pick(rng));
        Element x = random_element();
        Element y = random_element();
        if (multiply(multiply(gi, x), y) != multiply(gi, multiply(x, y)))
          fail("associativity fails on a random triple");
      }
    }
  }
}

GroupTable build_group(const PcPresentation& pres, const BuildOptions& opts) {
  pres.validate();
  GroupTable G;
  G.pres_ = pres;
  G.opts_ = opts;
  G.n_ = pres.size();
  G.orders_ = pres.rel_orders;
  G.stride_.assign(G.n_, 1);
  G.digits_.assign(G.n_, 0);
  std::uint64_t order = 1;
  for (std::size_t j = G.n_; j-- > 0;) {
    G.stride_[j] = order;
    if (order > std::numeric_limits<std::uint64_t>::max() / G.orders_[j])
      throw TooLarge("group order overflows 64 bits");
    order *= G.orders_[j];
    for (std::uint64_t r = G.orders_[j]; r > 1; r /= pres.prime) ++G.digits_[j];
  }
  G.order_ = order;
  G.caches_ = std::make_unique<GroupTable::Caches>();
  G.collector_ = std::make_unique<Collector>(G.pres_);

  std::uint64_t entries = 0;
  for (auto d : G.digits_) entries += d * (pres.prime - 1);
  const bool fits = order <= opts.size_cap && order <= std::numeric_limits<Rank>::max() &&
                    (entries == 0 || order <= opts.table_entry_cap / entries);
  if (!fits && !opts.allow_oversize)
    throw TooLarge("group of order " + std::to_string(order) + " exceeds the configured cap");
  if (fits) {
    G.tabled_ = true;
    G.build_tables();
  }
  G.check_consistency();
  if (G.tabled_ && pres.pair) {
    auto [a, b] = *G.distinguished();
    Rank gens[] = {a, b};
    if (G.subgroup_generated(gens).size() != order)
      throw InvalidParams("distinguished pair does not generate the group");
  }
  return G;
}

std::size_t GroupTable::memory_bytes() const {
  return (right_.size() + inverse_.size()) * sizeof(Rank);
}

}  // namespace beauville
