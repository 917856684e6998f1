#include "beauville/beauville.hpp"

#include <random>
#include <stdexcept>
#include <unordered_map>

#include "beauville/parallel.hpp"

namespace beauville {

namespace {

struct SignatureHash {
  std::size_t operator()(const SigmaIndex::Signature& s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : s) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

// Distinct signatures in discovery order, each with the first pair seen.
struct SignatureTable {
  std::vector<SigmaIndex::Signature> sigs;
  std::vector<GeneratingPair> witness;
  std::unordered_map<SigmaIndex::Signature, std::uint32_t, SignatureHash> index;

  std::uint32_t insert(SigmaIndex::Signature s, GeneratingPair p) {
    auto [it, fresh] = index.try_emplace(s, static_cast<std::uint32_t>(sigs.size()));
    if (fresh) {
      sigs.push_back(std::move(s));
      witness.push_back(p);
    }
    return it->second;
  }
};

bool two_generated(const GroupTable& G) {
  const auto& q = G.frattini_quotient();
  return q.rank == 2 && q.available;
}

BeauvilleStructure checked(const GroupTable& G, BeauvilleStructure s) {
  if (!is_beauville_structure(G, s.pair1, s.pair2))
    throw std::logic_error("signature search produced a pair of pairs with overlapping Sigma sets");
  return s.canonical();
}

}  // namespace

BeauvilleStructure BeauvilleStructure::canonical() const {
  GeneratingPair a = pair1.canonical(), b = pair2.canonical();
  return a <= b ? BeauvilleStructure{a, b} : BeauvilleStructure{b, a};
}

ElementSet sigma(const GroupTable& G, Rank x, Rank y) {
  if (!G.tabled()) throw TooLarge("Sigma sets need a materialised group");
  auto cls = G.class_ids();
  std::vector<bool> marked(G.num_classes(), false);
  for (Rank u : {x, y, G.mul(x, y)}) {
    Rank v = 0;
    do {
      marked[cls[v]] = true;
      v = G.mul(v, u);
    } while (v != 0);
  }
  ElementSet S(G.order());
  for (Rank r = 0; r < G.order(); ++r)
    if (marked[cls[r]]) S.insert(r);
  return S;
}

bool generates_by_closure(const GroupTable& G, Rank x, Rank y) {
  Rank gens[] = {x, y};
  return G.subgroup_generated(gens).size() == G.order();
}

bool is_generating_pair(const GroupTable& G, Rank x, Rank y) {
  const auto& q = G.frattini_quotient();
  if (q.rank == 2 && q.available) {
    auto a = q.of(x), b = q.of(y);
    std::int64_t det = static_cast<std::int64_t>(a[0]) * b[1] - static_cast<std::int64_t>(a[1]) * b[0];
    return det % static_cast<std::int64_t>(G.prime()) != 0;
  }
  if (q.rank > 2) return false;
  return generates_by_closure(G, x, y);
}

bool is_beauville_structure(const GroupTable& G, GeneratingPair p1, GeneratingPair p2) {
  if (!is_generating_pair(G, p1.x, p1.y) || !is_generating_pair(G, p2.x, p2.y)) return false;
  ElementSet common = sigma(G, p1.x, p1.y) & sigma(G, p2.x, p2.y);
  return common.size() == 1;
}

// ---------------------------------------------------------------------------

SigmaIndex::SigmaIndex(const GroupTable& G) : G_(&G) {
  if (!G.tabled()) throw TooLarge("Sigma sets need a materialised group");
  auto cls = G.class_ids();
  auto ord = G.element_orders();
  const std::uint32_t p = G.prime();
  std::vector<std::int64_t> slot(G.num_classes(), -1);
  for (Rank r = 0; r < G.order(); ++r)
    if (ord[r] == p && slot[cls[r]] < 0) slot[cls[r]] = static_cast<std::int64_t>(prime_classes_++);
  words_ = std::max<std::size_t>(1, (prime_classes_ + 63) / 64);
  cyclic_.assign(G.order() * words_, 0);
  for (Rank u = 1; u < G.order(); ++u) {
    Rank s = G.pow(u, ord[u] / p);
    Rank v = s;
    for (std::uint32_t k = 1; k < p; ++k, v = G.mul(v, s)) {
      auto bit = static_cast<std::size_t>(slot[cls[v]]);
      cyclic_[u * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
}

void SigmaIndex::add(Signature& s, Rank u) const {
  const std::uint64_t* src = cyclic_.data() + static_cast<std::size_t>(u) * words_;
  for (std::size_t w = 0; w < words_; ++w) s[w] |= src[w];
}

SigmaIndex::Signature SigmaIndex::of(Rank x, Rank y) const {
  Signature s(words_, 0);
  add(s, x);
  add(s, y);
  add(s, G_->mul(x, y));
  return s;
}

bool SigmaIndex::disjoint(const Signature& a, const Signature& b) const {
  for (std::size_t w = 0; w < words_; ++w)
    if (a[w] & b[w]) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<GeneratingPair> generating_pairs(const GroupTable& G) {
  if (!G.tabled()) throw TooLarge("pair enumeration needs a materialised group");
  std::vector<GeneratingPair> out;
  const auto N = static_cast<Rank>(G.order());
  for (Rank x = 0; x < N; ++x)
    for (Rank y = x + 1; y < N; ++y)
      if (is_generating_pair(G, x, y)) out.push_back({x, y});
  return out;
}

SearchResult find_beauville_structure(const GroupTable& G, const SearchOptions& opts) {
  if (!G.tabled()) throw TooLarge("structure search needs a materialised group");
  SearchResult res;
  if (!two_generated(G)) {
    // Cyclic or needing three or more generators: never Beauville.
    res.found = Tri::no;
    res.exhaustive = true;
    return res;
  }
  SigmaIndex index(G);
  const auto N = static_cast<Rank>(G.order());
  auto over_budget = [&] { return opts.budget && res.pairs_examined >= opts.budget; };

  if (opts.strategy == SearchStrategy::seeded_random) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Rank> pick(0, N - 1);
    const std::uint64_t budget = opts.budget ? opts.budget : 100000;
    auto draw = [&] {
      for (;;) {
        GeneratingPair p{pick(rng), pick(rng)};
        if (is_generating_pair(G, p.x, p.y)) return p;
      }
    };
    for (; res.pairs_examined < budget; ++res.pairs_examined) {
      GeneratingPair a = draw(), b = draw();
      if (index.disjoint(index.of(a.x, a.y), index.of(b.x, b.y))) {
        res.found = Tri::yes;
        res.structure = checked(G, {a, b});
        return res;
      }
    }
    return res;
  }

  // Pair 1 fixed to the distinguished pair.
  GeneratingPair first{};
  if (auto d = G.distinguished()) {
    first = {d->first, d->second};
  } else {
    first = generating_pairs(G).front();
  }
  const auto sig1 = index.of(first.x, first.y);
  for (Rank x = 0; x < N; ++x) {
    for (Rank y = x + 1; y < N; ++y) {
      if (over_budget()) return res;
      ++res.pairs_examined;
      if (!is_generating_pair(G, x, y)) continue;
      if (index.disjoint(sig1, index.of(x, y))) {
        res.found = Tri::yes;
        res.structure = checked(G, {first, {x, y}});
        return res;
      }
    }
  }

  // Every pair is conjugate to one whose first entry is the least element of
  // its conjugacy class, and Sigma is invariant under conjugation.
  auto cls = G.class_ids();
  std::vector<bool> seen(G.num_classes(), false);
  SignatureTable table;
  for (Rank x = 1; x < N; ++x) {
    if (seen[cls[x]]) continue;
    seen[cls[x]] = true;
    for (Rank y = 0; y < N; ++y) {
      if (over_budget()) return res;
      ++res.pairs_examined;
      if (is_generating_pair(G, x, y)) table.insert(index.of(x, y), {x, y});
    }
  }
  res.distinct_signatures = table.sigs.size();
  for (std::size_t i = 0; i < table.sigs.size(); ++i)
    for (std::size_t j = i + 1; j < table.sigs.size(); ++j)
      if (index.disjoint(table.sigs[i], table.sigs[j])) {
        res.found = Tri::yes;
        res.exhaustive = true;
        res.structure = checked(G, {table.witness[i], table.witness[j]});
        return res;
      }
  res.found = Tri::no;
  res.exhaustive = true;
  return res;
}

Tri is_beauville_group(const GroupTable& G, const SearchOptions& opts) {
  return find_beauville_structure(G, opts).found;
}

std::uint64_t enumerate_beauville_structures(const GroupTable& G,
                                             const std::function<void(const BeauvilleStructure&)>& emit,
                                             const EnumerationOptions& opts) {
  if (G.order() > opts.max_order)
    throw TooLarge("structure enumeration is capped at order " + std::to_string(opts.max_order));
  if (!two_generated(G)) return 0;
  SigmaIndex index(G);
  const auto pairs = generating_pairs(G);
  SignatureTable table;
  std::vector<std::uint32_t> sig_of(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) sig_of[i] = table.insert(index.of(pairs[i].x, pairs[i].y), pairs[i]);

  const std::size_t D = table.sigs.size();
  const std::size_t row_words = (D + 63) / 64;
  std::vector<std::uint64_t> compatible(D * row_words, 0);
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      if (index.disjoint(table.sigs[a], table.sigs[b]))
        compatible[a * row_words + b / 64] |= std::uint64_t{1} << (b % 64);
  auto ok = [&](std::uint32_t a, std::uint32_t b) {
    return (compatible[a * row_words + b / 64] >> (b % 64)) & 1;
  };

  // Blocks of outer indices run in parallel; emission stays in order.
  constexpr std::size_t block = 64;
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint32_t>> partners(block);
  for (std::size_t start = 0; start < pairs.size(); start += block) {
    const std::size_t len = std::min(block, pairs.size() - start);
    parallel_for(len, opts.workers, [&](std::size_t k) {
      const std::size_t i = start + k;
      auto& out = partners[k];
      out.clear();
      for (std::size_t j = i + 1; j < pairs.size(); ++j)
        if (ok(sig_of[i], sig_of[j])) out.push_back(static_cast<std::uint32_t>(j));
    });
    for (std::size_t k = 0; k < len; ++k) {
      for (auto j : partners[k]) {
        emit({pairs[start + k], pairs[j]});
        ++count;
      }
    }
  }
  return count;
}

}  // namespace beauville
