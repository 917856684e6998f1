#include <algorithm>
#include <deque>
#include <random>

#include "beauville/errors.hpp"
#include "beauville/pcgroup.hpp"
#include "caches.hpp"

namespace beauville {

namespace {

// Orbit of the identity under right multiplication by `gens`.
ElementSet closure(const GroupTable& G, std::span<const Rank> gens) {
  ElementSet S(G.order());
  S.insert(0);
  std::vector<Rank> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Rank z = queue[head];
    for (Rank g : gens) {
      Rank w = G.mul(z, g);
      if (!S.contains(w)) {
        S.insert(w);
        queue.push_back(w);
      }
    }
  }
  return S;
}

// Subgroup generated by the members of `set`, adding generators greedily.
ElementSet generated_by_set(const GroupTable& G, const ElementSet& set) {
  std::vector<Rank> gens;
  ElementSet S(G.order());
  S.insert(0);
  set.for_each([&](Rank r) {
    if (S.contains(r)) return;
    gens.push_back(r);
    S = closure(G, gens);
  });
  return S;
}

// Smallest subgroup containing `gens` that is normalised by `conjugators`.
ElementSet closure_under_conjugation(const GroupTable& G, std::vector<Rank> gens,
                                     std::span<const Rank> conjugators) {
  ElementSet S = closure(G, gens);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (Rank c : conjugators) {
      Rank h = G.conj(gens[k], c);
      if (!S.contains(h)) {
        gens.push_back(h);
        S = closure(G, gens);
      }
    }
  }
  return S;
}

std::vector<Rank> pc_generators(const GroupTable& G) {
  std::vector<Rank> g;
  for (std::size_t i = 0; i < G.num_gens(); ++i) g.push_back(G.gen_rank(i));
  return g;
}

}  // namespace

ElementSet GroupTable::subgroup_generated(std::span<const Rank> gens) const {
  require_tabled("subgroup_generated");
  return closure(*this, gens);
}

ElementSet GroupTable::normal_closure(std::span<const Rank> gens) const {
  require_tabled("normal_closure");
  auto pcg = pc_generators(*this);
  return closure_under_conjugation(*this, {gens.begin(), gens.end()}, pcg);
}

ElementSet GroupTable::all_elements() const {
  require_tabled("all_elements");
  return ElementSet(order_).complement();
}

const ElementSet& GroupTable::center() const {
  require_tabled("center");
  std::call_once(caches_->center_once, [&] {
    ElementSet Z(order_);
    for (Rank z = 0; z < order_; ++z) {
      bool central = true;
      for (std::size_t i = 0; i < n_ && central; ++i)
        central = mul(z, gen_rank(i)) == mul(gen_rank(i), z);
      if (central) Z.insert(z);
    }
    caches_->center = std::move(Z);
  });
  return caches_->center;
}

const ElementSet& GroupTable::derived() const {
  require_tabled("derived");
  std::call_once(caches_->derived_once, [&] {
    std::vector<Rank> comms;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) comms.push_back(comm(gen_rank(i), gen_rank(j)));
    caches_->derived = normal_closure(comms);
  });
  return caches_->derived;
}

ElementSet GroupTable::agemo(unsigned k) const {
  require_tabled("agemo");
  std::int64_t q = 1;
  for (unsigned s = 0; s < k; ++s) q *= prime();
  // The set of q-th powers is closed under conjugation, so the subgroup it
  // generates is normal.
  ElementSet powers(order_);
  for (Rank x = 0; x < order_; ++x) powers.insert(pow(x, q));
  return generated_by_set(*this, powers);
}

const ElementSet& GroupTable::frattini() const {
  require_tabled("frattini");
  std::call_once(caches_->frattini_once,
                 [&] { caches_->frattini = generated_by_set(*this, derived() | agemo(1)); });
  return caches_->frattini;
}

ElementSet GroupTable::centralizer(Rank u) const {
  require_tabled("centralizer");
  ElementSet C(order_);
  for (Rank z = 0; z < order_; ++z)
    if (mul(z, u) == mul(u, z)) C.insert(z);
  return C;
}

std::span<const std::uint32_t> GroupTable::element_orders() const {
  require_tabled("element_orders");
  std::call_once(caches_->orders_once, [&] {
    // o(x) = p * o(x^p) for x != 1
    std::vector<std::uint32_t> ord(order_, 0);
    ord[0] = 1;
    std::vector<Rank> chain;
    for (Rank x = 0; x < order_; ++x) {
      Rank y = x;
      while (!ord[y]) {
        chain.push_back(y);
        y = pow(y, prime());
      }
      while (!chain.empty()) {
        ord[chain.back()] = ord[y] * prime();
        y = chain.back();
        chain.pop_back();
      }
    }
    caches_->orders = std::move(ord);
    caches_->orders_ready.store(true, std::memory_order_release);
  });
  return caches_->orders;
}

std::uint64_t GroupTable::exponent() const {
  auto ord = element_orders();
  return *std::max_element(ord.begin(), ord.end());
}

unsigned GroupTable::nilpotency_class() const {
  require_tabled("nilpotency_class");
  ElementSet term = all_elements();
  unsigned c = 0;
  while (term.size() > 1) {
    std::vector<Rank> comms;
    ElementSet seen(order_);
    term.for_each([&](Rank h) {
      for (std::size_t i = 0; i < n_; ++i) {
        Rank c2 = comm(h, gen_rank(i));
        if (!seen.contains(c2)) {
          seen.insert(c2);
          comms.push_back(c2);
        }
      }
    });
    ElementSet next = normal_closure(comms);
    if (next == term) throw InvalidParams("group is not nilpotent");
    term = std::move(next);
    ++c;
  }
  return c;
}

bool GroupTable::is_powerful() const {
  return derived().is_subset_of(agemo(prime() == 2 ? 2 : 1));
}

RegularityCheck GroupTable::is_regular(std::uint64_t pair_limit, std::uint64_t samples,
                                       std::uint64_t seed) const {
  require_tabled("is_regular");
  const std::int64_t p = prime();
  RegularityCheck result;
  result.regular = true;
  auto check_pair = [&](Rank x, Rank y) {
    ++result.pairs_checked;
    Rank hs[] = {x, y};
    Rank c = comm(x, y);
    ElementSet H1 = closure_under_conjugation(*this, {c}, hs);
    ElementSet powers(order_);
    H1.for_each([&](Rank h) { powers.insert(pow(h, p)); });
    ElementSet Hp = generated_by_set(*this, powers);
    Rank lhs = pow(mul(x, y), p);
    Rank rhs = mul(pow(x, p), pow(y, p));
    return Hp.contains(mul(inv(rhs), lhs));
  };
  if (order_ * order_ <= pair_limit) {
    for (Rank x = 0; x < order_ && result.regular; ++x)
      for (Rank y = 0; y < order_ && result.regular; ++y)
        if (!check_pair(x, y)) result.regular = false;
  } else {
    result.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Rank> pick(0, static_cast<Rank>(order_ - 1));
    for (std::uint64_t k = 0; k < samples && result.regular; ++k)
      if (!check_pair(pick(rng), pick(rng))) result.regular = false;
  }
  return result;
}

std::span<const std::uint32_t> GroupTable::class_ids() const {
  require_tabled("class_ids");
  std::call_once(caches_->classes_once, [&] {
    constexpr std::uint32_t none = ~std::uint32_t{0};
    std::vector<std::uint32_t> label(order_, none);
    std::uint32_t next = 0;
    std::vector<Rank> queue;
    for (Rank x = 0; x < order_; ++x) {
      if (label[x] != none) continue;
      label[x] = next;
      queue.assign(1, x);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t i = 0; i < n_; ++i) {
          Rank w = conj(queue[head], gen_rank(i));
          if (label[w] == none) {
            label[w] = next;
            queue.push_back(w);
          }
        }
      }
      ++next;
    }
    caches_->classes = std::move(label);
    caches_->num_classes = next;
  });
  return caches_->classes;
}

std::uint32_t GroupTable::num_classes() const {
  class_ids();
  return caches_->num_classes;
}

const FrattiniQuotient& GroupTable::frattini_quotient() const {
  require_tabled("frattini_quotient");
  std::call_once(caches_->quotient_once, [&] {
    FrattiniQuotient q;
    const ElementSet& phi = frattini();
    auto phi_members = phi.members();
    constexpr std::uint32_t none = ~std::uint32_t{0};
    q.coset.assign(order_, none);
    std::uint32_t labels = 0;
    for (Rank x = 0; x < order_; ++x) {
      if (q.coset[x] != none) continue;
      for (Rank f : phi_members) q.coset[mul(x, f)] = labels;
      ++labels;
    }
    for (std::uint32_t l = labels; l > 1; l /= prime()) ++q.rank;
    if (q.rank == 2) {
      std::pair<Rank, Rank> basis{0, 0};
      if (auto d = distinguished()) {
        basis = *d;
      } else {
        // first pc generator outside Phi, then the first outside <u, Phi>
        std::size_t i = 0;
        while (i < n_ && phi.contains(gen_rank(i))) ++i;
        Rank u = gen_rank(i);
        std::vector<bool> hit(labels, false);
        for (std::uint32_t a = 0; a < prime(); ++a) hit[q.coset[pow(u, a)]] = true;
        std::size_t k = i + 1;
        while (k < n_ && hit[q.coset[gen_rank(k)]]) ++k;
        basis = {u, gen_rank(k)};
      }
      q.basis = basis;
      q.coords.assign(labels, {0, 0});
      std::vector<bool> seen(labels, false);
      std::uint32_t covered = 0;
      for (std::uint32_t a = 0; a < prime(); ++a) {
        for (std::uint32_t b = 0; b < prime(); ++b) {
          auto l = q.coset[mul(pow(basis.first, a), pow(basis.second, b))];
          if (!seen[l]) {
            seen[l] = true;
            ++covered;
          }
          q.coords[l] = {a, b};
        }
      }
      q.available = covered == labels;
    }
    caches_->quotient = std::move(q);
  });
  return caches_->quotient;
}

CharacteristicData characteristic_subgroups(const GroupTable& G) {
  CharacteristicData d;
  d.frattini = G.frattini();
  d.center = G.center();
  d.derived = G.derived();
  d.exponent = G.exponent();
  for (std::uint64_t q = 1, k = 0; q <= d.exponent; q *= G.prime(), ++k)
    d.agemo.push_back(G.agemo(static_cast<unsigned>(k)));
  d.nilpotency_class = G.nilpotency_class();
  d.powerful = G.is_powerful();
  d.regular = G.is_regular();
  return d;
}

}  // namespace beauville
