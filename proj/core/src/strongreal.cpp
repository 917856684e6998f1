#include "beauville/strongreal.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "beauville/errors.hpp"
#include "beauville/parallel.hpp"

namespace beauville {

namespace {

std::int64_t ipow(std::int64_t b, unsigned k) {
  std::int64_t r = 1;
  while (k--) r *= b;
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Inverse of an odd number modulo 2^e.
std::int64_t inverse_mod_pow2(std::int64_t a, unsigned e) {
  const std::int64_t M = std::int64_t{1} << e;
  a = mod(a, M);
  if (a % 2 == 0) throw InvalidParams("even number has no inverse modulo a power of 2");
  std::int64_t x = 1;  // Newton: each step doubles the number of correct bits
  for (unsigned bits = 1; bits < e; bits *= 2) x = mod(x * (2 - mod(a * x, M)), M);
  return mod(x, M);
}

unsigned log_p(std::uint64_t q, std::uint32_t p) {
  unsigned k = 0;
  for (; q > 1; q /= p) ++k;
  return k;
}

bool images_generate(const GroupTable& G, const std::vector<Rank>& images) {
  const auto& q = G.frattini_quotient();
  if (q.available) {
    const auto p = static_cast<std::int64_t>(G.prime());
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        auto a = q.of(images[i]), b = q.of(images[j]);
        if ((static_cast<std::int64_t>(a[0]) * b[1] - static_cast<std::int64_t>(a[1]) * b[0]) % p != 0) return true;
      }
    return false;
  }
  return G.subgroup_generated(images).size() == G.order();
}

void require_range(std::int64_t v, std::int64_t lo, std::int64_t hi, const char* name) {
  if (v < lo || v > hi)
    throw InvalidParams(std::string(name) + " = " + std::to_string(v) + " is outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
}

unsigned triangle_e(const GroupTable& G) {
  if (G.num_gens() == 5 && G.prime() == 2) {
    unsigned e = log_p(G.rel_order(0), 2);
    if (e >= 2 && G.presentation() == presentation_of(TriangleQuotient{e})) return e;
  }
  throw NotTriangleQuotient("group is not a triangle-group quotient");
}

}  // namespace

// ---------------------------------------------------------------------------
// Automorphism

Rank Automorphism::apply(const GroupTable& G, Rank r) const {
  if (!table_.empty()) return table_[r];
  Rank out = 0;
  for (std::size_t j = 0; j < images_.size(); ++j)
    if (auto d = G.digit(r, j)) out = G.mul(out, G.pow(images_[j], static_cast<std::int64_t>(d)));
  return out;
}

Element Automorphism::apply(const GroupTable& G, const Element& u) const {
  return G.unrank(apply(G, static_cast<Rank>(G.rank(u))));
}

void Automorphism::materialize(const GroupTable& G) {
  if (!table_.empty()) return;
  const std::size_t N = G.order();
  std::vector<Rank> t(N);
  t[0] = 0;
  // y = y' g_j with j the last nonzero digit of y, so theta(y) = theta(y') theta(g_j).
  for (std::size_t y = 1; y < N; ++y) {
    std::size_t j = G.num_gens() - 1;
    while (G.digit(static_cast<Rank>(y), j) == 0) --j;
    t[y] = G.mul(t[y - G.gen_rank(j)], images_[j]);
  }
  table_ = std::move(t);
}

bool Automorphism::is_identity(const GroupTable& G) const {
  for (std::size_t j = 0; j < images_.size(); ++j)
    if (images_[j] != G.gen_rank(j)) return false;
  return true;
}

std::optional<Automorphism> automorphism_from_images(const GroupTable& G, std::vector<Rank> images) {
  const auto& P = G.presentation();
  if (images.size() != G.num_gens()) throw InvalidParams("one image per pc generator is required");
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (G.pow(images[j], static_cast<std::int64_t>(G.rel_order(j))) != G.evaluate(P.power_rels[j], images))
      return std::nullopt;
    for (std::size_t l = j + 1; l < images.size(); ++l) {
      auto it = P.conj_rels.find({static_cast<int>(j), static_cast<int>(l)});
      Rank rhs = it == P.conj_rels.end() ? images[l] : G.evaluate(it->second, images);
      if (G.conj(images[l], images[j]) != rhs) return std::nullopt;
    }
  }
  if (!images_generate(G, images)) return std::nullopt;
  return Automorphism(std::move(images));
}

std::optional<Automorphism> extend_to_automorphism(const GroupTable& G, Rank ix, Rank iy) {
  auto images = G.generator_images(ix, iy);
  if (!images) return std::nullopt;
  return automorphism_from_images(G, std::move(*images));
}

Automorphism compose(const GroupTable& G, const Automorphism& theta, const Automorphism& phi) {
  std::vector<Rank> images;
  images.reserve(phi.images().size());
  for (Rank r : phi.images()) images.push_back(theta.apply(G, r));
  return Automorphism(std::move(images));
}

Automorphism inverse(const GroupTable& G, const Automorphism& theta) {
  Automorphism t = theta;
  t.materialize(G);
  std::vector<Rank> back(G.order());
  for (std::size_t r = 0; r < G.order(); ++r) back[t.table()[r]] = static_cast<Rank>(r);
  std::vector<Rank> images;
  for (std::size_t j = 0; j < G.num_gens(); ++j) images.push_back(back[G.gen_rank(j)]);
  return Automorphism(std::move(images));
}

std::optional<Automorphism> inversion_automorphism(const GroupTable& G) {
  auto d = G.distinguished();
  if (!d) return std::nullopt;
  return extend_to_automorphism(G, G.inv(d->first), G.inv(d->second));
}

std::vector<Automorphism> brute_force_automorphisms(const GroupTable& G, const BruteForceOptions& opts) {
  if (G.order() > opts.max_order)
    throw TooLarge("brute-force automorphisms are capped at order " + std::to_string(opts.max_order));
  auto d = G.distinguished();
  if (!d) throw InvalidParams("brute-force automorphisms need a distinguished pair");
  const auto N = static_cast<Rank>(G.order());
  auto ord = G.element_orders();
  const auto oa = ord[d->first], ob = ord[d->second];
  std::vector<std::vector<Automorphism>> found(N);
  parallel_for(N, opts.workers, [&](std::size_t ix) {
    if (ord[ix] != oa) return;
    for (Rank iy = 0; iy < N; ++iy) {
      if (ord[iy] != ob || !is_generating_pair(G, static_cast<Rank>(ix), iy)) continue;
      if (auto theta = extend_to_automorphism(G, static_cast<Rank>(ix), iy)) {
        if (opts.materialize) theta->materialize(G);
        found[ix].push_back(std::move(*theta));
      }
    }
  });
  std::vector<Automorphism> out;
  for (auto& v : found)
    for (auto& a : v) out.push_back(std::move(a));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Families

std::optional<Automorphism> metacyclic_aut(const GroupTable& G, const Metacyclic& params, std::int64_t m,
                                           std::int64_t n, std::int64_t r, std::int64_t s) {
  require_family(G, params);
  const std::int64_t p = params.p, pe = ipow(p, params.e), pi = ipow(p, params.i), pei = ipow(p, params.e - params.i);
  require_range(m, 1, pi, "m");
  require_range(r, 1, pi, "r");
  require_range(n, 1, pe, "n");
  require_range(s, 1, pe, "s");
  if (n % p == 0) throw InvalidParams("p divides n");
  const Rank b = G.gen_rank(0), a = G.gen_rank(1);
  Rank ia = G.mul(G.pow(b, m * pei), G.pow(a, n));
  Rank ib = G.mul(G.pow(b, 1 + r * pei), G.pow(a, s));
  return extend_to_automorphism(G, ia, ib);
}

std::optional<Automorphism> class2_aut(const GroupTable& G, const Class2Beauville& params, std::int64_t m,
                                       std::int64_t n, std::int64_t r, std::int64_t s, Rank c_a, Rank c_b) {
  require_family(G, params);
  if (!(params.k > 0 && params.k < params.j))
    throw NotInFamily("the class-2 automorphism family needs 0 < k < j");
  const std::int64_t p = params.p, pi = ipow(p, params.i), pei = ipow(p, params.e - params.i);
  require_range(m, 1, pi, "m");
  require_range(n, 1, pi, "n");
  require_range(r, 1, pi, "r");
  require_range(s, 1, pi, "s");
  if (s % p == 0) throw InvalidParams("p divides s");
  if (c_a >= G.order() || c_b >= G.order() || !G.derived().contains(c_a) || !G.derived().contains(c_b))
    throw InvalidParams("c_a and c_b must lie in the derived subgroup");
  const Rank a = G.gen_rank(0), b = G.gen_rank(1);
  Rank ia = G.mul(G.mul(G.pow(a, 1 + m * pei), G.pow(b, n)), c_a);
  Rank ib = G.mul(G.mul(G.pow(a, r * pei), G.pow(b, s)), c_b);
  return extend_to_automorphism(G, ia, ib);
}

std::vector<Automorphism> metacyclic_family(const GroupTable& G, const Metacyclic& params,
                                            std::vector<std::array<std::int64_t, 4>>* failures) {
  const std::int64_t p = params.p, pe = ipow(p, params.e), pi = ipow(p, params.i);
  std::set<Automorphism> maps;
  for (std::int64_t m = 1; m <= pi; ++m)
    for (std::int64_t n = 1; n <= pe; ++n) {
      if (n % p == 0) continue;
      for (std::int64_t r = 1; r <= pi; ++r)
        for (std::int64_t s = 1; s <= pe; ++s) {
          if (auto theta = metacyclic_aut(G, params, m, n, r, s)) {
            maps.insert(std::move(*theta));
          } else if (failures) {
            failures->push_back({m, n, r, s});
          }
        }
    }
  return {maps.begin(), maps.end()};
}

std::pair<ElementSet, ElementSet> metacyclic_family_sets(const GroupTable& G, const Metacyclic& params) {
  require_family(G, params);
  const std::int64_t p = params.p, pe = ipow(p, params.e), pi = ipow(p, params.i), pei = ipow(p, params.e - params.i);
  const Rank b = G.gen_rank(0), a = G.gen_rank(1);
  ElementSet A(G.order()), B(G.order());
  for (std::int64_t m = 1; m <= pi; ++m)
    for (std::int64_t n = 1; n <= pe; ++n)
      if (n % p) A.insert(G.mul(G.pow(b, m * pei), G.pow(a, n)));
  for (std::int64_t r = 1; r <= pi; ++r)
    for (std::int64_t s = 1; s <= pe; ++s) B.insert(G.mul(G.pow(b, 1 + r * pei), G.pow(a, s)));
  return {std::move(A), std::move(B)};
}

std::pair<ElementSet, ElementSet> class2_family_sets(const GroupTable& G, const Class2Beauville& params) {
  require_family(G, params);
  const std::int64_t p = params.p, pi = ipow(p, params.i), pei = ipow(p, params.e - params.i);
  const Rank a = G.gen_rank(0), b = G.gen_rank(1);
  const auto derived = G.derived().members();
  ElementSet A(G.order()), B(G.order());
  for (std::int64_t m = 1; m <= pi; ++m)
    for (std::int64_t n = 1; n <= pi; ++n) {
      Rank base = G.mul(G.pow(a, 1 + m * pei), G.pow(b, n));
      for (Rank c : derived) A.insert(G.mul(base, c));
    }
  for (std::int64_t r = 1; r <= pi; ++r)
    for (std::int64_t s = 1; s <= pi; ++s) {
      if (s % p == 0) continue;
      Rank base = G.mul(G.pow(a, r * pei), G.pow(b, s));
      for (Rank c : derived) B.insert(G.mul(base, c));
    }
  return {std::move(A), std::move(B)};
}

Matrix2 induced_matrix_mod_frattini(const GroupTable& G, const Automorphism& theta) {
  const auto& q = G.frattini_quotient();
  if (!q.available) throw InvalidParams("G / Phi(G) is not of rank 2");
  Matrix2 M;
  auto c0 = q.of(theta.apply(G, q.basis.first));
  auto c1 = q.of(theta.apply(G, q.basis.second));
  M.m[0][0] = c0[0];
  M.m[1][0] = c0[1];
  M.m[0][1] = c1[0];
  M.m[1][1] = c1[1];
  return M;
}

// ---------------------------------------------------------------------------
// Witnesses

bool is_inversion_witness(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank g) {
  return G.conj(G.inv(x), g) == theta.apply(G, x) && G.conj(G.inv(y), g) == theta.apply(G, y);
}

std::optional<Rank> inversion_witness(const GroupTable& G, const Automorphism& theta, Rank x, Rank y,
                                      const WitnessOptions& opts) {
  const Rank tx = theta.apply(G, x), ty = theta.apply(G, y);
  const Rank xi = G.inv(x), yi = G.inv(y);
  auto cls = G.class_ids();
  if (cls[tx] != cls[xi] || cls[ty] != cls[yi]) return std::nullopt;
  const auto N = static_cast<Rank>(G.order());
  if (G.order() <= opts.scan_cap) {
    for (Rank g = 0; g < N; ++g)
      if (G.conj(xi, g) == tx && G.conj(yi, g) == ty) return g;
    return std::nullopt;
  }
  // One conjugator taking x^-1 to theta(x), by a transversal of its class;
  // every other lies in C_G(x^-1) times it.
  constexpr Rank none = ~Rank{0};
  std::vector<Rank> via(N, none);
  std::vector<Rank> queue{xi};
  via[xi] = 0;
  for (std::size_t head = 0; head < queue.size() && via[tx] == none; ++head) {
    Rank w = queue[head];
    for (std::size_t i = 0; i < G.num_gens(); ++i) {
      Rank c = G.conj(w, G.gen_rank(i));
      if (via[c] == none) {
        via[c] = G.mul(via[w], G.gen_rank(i));
        queue.push_back(c);
      }
    }
  }
  const Rank g0 = via[tx];
  std::optional<Rank> best;
  G.centralizer(xi).for_each([&](Rank c) {
    if (best) return;
    Rank g = G.mul(c, g0);
    if (G.conj(yi, g) == ty) best = g;
  });
  return best;
}

Rank lemma33_transfer(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank h, Basis basis) {
  const Rank a = G.mul(x, y);
  const Rank b = basis == Basis::xy_x ? x : y;
  if (!is_inversion_witness(G, theta, a, b, h)) throw NotAWitness("h does not witness the changed basis");
  const Rank g = basis == Basis::xy_x ? G.mul(G.inv(x), h) : G.mul(y, h);
  if (!is_inversion_witness(G, theta, x, y, g)) throw std::logic_error("basis-change transfer failed to verify");
  return g;
}

Rank lemma33_forward(const GroupTable& G, const Automorphism& theta, Rank x, Rank y, Rank g, Basis basis) {
  if (!is_inversion_witness(G, theta, x, y, g)) throw NotAWitness("g does not witness (x, y)");
  const Rank h = basis == Basis::xy_x ? G.mul(x, g) : G.mul(G.inv(y), g);
  const Rank b = basis == Basis::xy_x ? x : y;
  if (!is_inversion_witness(G, theta, G.mul(x, y), b, h))
    throw std::logic_error("basis-change transfer failed to verify");
  return h;
}

bool verify_strong_real(const GroupTable& G, const BeauvilleStructure& s, const StrongRealWitness& w) {
  if (!automorphism_from_images(G, w.theta.images())) return false;
  return is_inversion_witness(G, w.theta, s.pair1.x, s.pair1.y, w.g1) &&
         is_inversion_witness(G, w.theta, s.pair2.x, s.pair2.y, w.g2);
}

std::optional<StrongRealWitness> find_strong_real_witness(const GroupTable& G, const BeauvilleStructure& s,
                                                          const std::vector<Automorphism>& auts) {
  for (const auto& theta : auts) {
    auto g1 = inversion_witness(G, theta, s.pair1.x, s.pair1.y);
    if (!g1) continue;
    if (auto g2 = inversion_witness(G, theta, s.pair2.x, s.pair2.y)) return StrongRealWitness{theta, *g1, *g2};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Triangle-group quotient

DefectResult lemma34_defect(const GroupTable& G, Rank a, Side side) {
  const unsigned e = triangle_e(G);
  const std::int64_t M = std::int64_t{1} << e, half = M / 2;
  const Rank x = G.gen_rank(0), y = G.gen_rank(1);
  const auto theta = *inversion_automorphism(G);
  const auto di = static_cast<std::int64_t>(G.digit(a, 0));
  const auto dj = static_cast<std::int64_t>(G.digit(a, 1));
  const auto dk = static_cast<std::int64_t>(G.digit(a, 2));
  DefectResult res;
  if (side == Side::x_side) {
    if (di % 2 == 0) throw WrongForm("the x exponent must be odd");
    const std::int64_t n = inverse_mod_pow2(di, e);
    res.candidate = G.pow(y, mod(2 * dk * n - dj, M));
  } else {
    if (dj % 2 == 0) throw WrongForm("the y exponent must be odd");
    // a = y^j x^i z^k up to central factors
    const auto kappa = static_cast<std::int64_t>(G.digit(G.mul(G.pow(y, dj), G.pow(x, di)), 2));
    const std::int64_t k = mod(dk - kappa, half);
    const std::int64_t m = inverse_mod_pow2(dj, e);
    res.candidate = G.pow(x, mod(-2 * k * m - di, M));
  }
  res.defect = G.mul(a, theta.apply(G, a));
  res.commutator = G.comm(G.inv(a), res.candidate);
  return res;
}

CongruenceParams with_inverses(CongruenceParams c) {
  c.n = inverse_mod_pow2(1 + 2 * c.i1, c.e);
  c.m = inverse_mod_pow2(1 + 2 * c.j2, c.e);
  return c;
}

std::pair<std::int64_t, std::int64_t> solve_RS(const CongruenceParams& c) {
  const std::int64_t M = std::int64_t{1} << c.e;
  const std::int64_t i1 = mod(c.i1, M), j1 = mod(c.j1, M), k1 = mod(c.k1, M);
  const std::int64_t i2 = mod(c.i2, M), j2 = mod(c.j2, M), k2 = mod(c.k2, M);
  const std::int64_t n = mod(c.n, M), m = mod(c.m, M);
  // -2 j1 * (powers of x) + (1 + 2 i1) * (powers of y) leaves R alone.
  const std::int64_t coef = mod((1 + 2 * i1) * (1 + 2 * j2) - mod(4 * j1 * i2, M), M);
  const std::int64_t rhs =
      mod(mod((1 + 2 * i1) * mod(2 * k1 * n - 2 * j1, M), M) - mod(4 * j1 * i2, M) - mod(mod(4 * j1 * k2, M) * m, M), M);
  const std::int64_t R = mod(rhs * inverse_mod_pow2(coef, c.e), M);
  const std::int64_t S = mod(n * mod(2 * i2 * (R - 1) - mod(2 * k2 * m, M), M), M);
  return {R, S};
}

bool powers_of_x_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S) {
  const std::int64_t M = std::int64_t{1} << c.e;
  return mod((1 + 2 * c.i1) * S - (2 * c.i2 * (R - 1) - 2 * c.k2 * c.m), M) == 0;
}

bool powers_of_y_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S) {
  const std::int64_t M = std::int64_t{1} << c.e;
  return mod(2 * c.j1 * (S - 1) + 2 * c.k1 * c.n - (1 + 2 * c.j2) * R, M) == 0;
}

bool powers_of_z_hold(const CongruenceParams& c, std::int64_t R, std::int64_t S) {
  const std::int64_t H = std::int64_t{1} << (c.e - 1);
  const std::int64_t lhs = (1 + 2 * c.i1) * c.j1 * S * (S - 1) + c.k1 * S;
  const std::int64_t rhs = (1 + 2 * c.j2) * c.i2 * R * (R - 1) - c.k2 * R;
  return mod(lhs - rhs, H) == 0;
}

struct TheoremBSolver::Frame {
  Automorphism psi;
  std::vector<Rank> psi_inverse;  // table of psi^-1
  Automorphism theta;             // psi o inversion o psi^-1
};

TheoremBSolver::TheoremBSolver(const GroupTable& G) : G_(G), e_(triangle_e(G)) {
  auto inv = inversion_automorphism(G);
  if (!inv) throw NotTriangleQuotient("inversion does not extend to an automorphism");
  inversion_ = std::move(*inv);
  inversion_.materialize(G);
}

TheoremBSolver::~TheoremBSolver() = default;

const TheoremBSolver::Frame& TheoremBSolver::frame_for(GeneratingPair p1) {
  auto it = cache_.find(p1);
  if (it != cache_.end()) return *it->second;
  auto psi = extend_to_automorphism(G_, p1.x, p1.y);
  if (!psi) throw WitnessVerificationFailed("the first pair does not extend to an automorphism");
  auto b = std::make_unique<Frame>();
  b->psi = std::move(*psi);
  b->psi.materialize(G_);
  b->psi_inverse.assign(G_.order(), 0);
  for (std::size_t r = 0; r < G_.order(); ++r) b->psi_inverse[b->psi.table()[r]] = static_cast<Rank>(r);
  std::vector<Rank> images;
  for (std::size_t j = 0; j < G_.num_gens(); ++j)
    images.push_back(b->psi.apply(G_, inversion_.apply(G_, b->psi_inverse[G_.gen_rank(j)])));
  b->theta = Automorphism(std::move(images));
  b->theta.materialize(G_);
  return *cache_.emplace(p1, std::move(b)).first->second;
}

TheoremBSolver::Construction TheoremBSolver::construct_for(Rank u, Rank v) const {
  const GroupTable& G = G_;
  const std::int64_t M = std::int64_t{1} << e_, half = M / 2;
  const Rank x = G.gen_rank(0), y = G.gen_rank(1);
  auto d = [&](Rank r, std::size_t i) { return static_cast<std::int64_t>(G.digit(r, i)); };
  const std::int64_t au = d(u, 0), bu = d(u, 1), av = d(v, 0), bv = d(v, 1);
  if (au % 2 == 0 || bu % 2 != 0) throw WrongForm("u must lie in <x, Phi> \\ Phi");
  if (av % 2 != 0 || bv % 2 == 0) throw WrongForm("v must lie in <y, Phi> \\ Phi");
  Construction c;
  c.params.e = e_;
  c.params.i1 = (au - 1) / 2;
  c.params.j1 = bu / 2;
  c.params.k1 = d(u, 2);
  // v = y^{bv} x^{av} z^{k2} up to central factors
  const std::int64_t kappa = d(G.mul(G.pow(y, bv), G.pow(x, av)), 2);
  c.params.i2 = av / 2;
  c.params.j2 = (bv - 1) / 2;
  c.params.k2 = mod(d(v, 2) - kappa, half);
  c.params = with_inverses(c.params);
  std::tie(c.R, c.S) = solve_RS(c.params);
  c.g = G.mul(G.pow(u, c.S), G.pow(y, mod(2 * c.params.k1 * c.params.n - 2 * c.params.j1, M)));
  return c;
}

TheoremBResult TheoremBSolver::solve(const BeauvilleStructure& s) {
  const GroupTable& G = G_;
  const Frame& basis = frame_for(s.pair1);
  TheoremBResult res;
  res.witness.theta = basis.theta;
  res.witness.g1 = 0;

  // Pull pair 2 back to coordinates in which pair 1 is (x, y).
  const Rank x2 = basis.psi_inverse[s.pair2.x], y2 = basis.psi_inverse[s.pair2.y];
  const Rank cand[3] = {x2, y2, G.mul(x2, y2)};
  const auto& q = G.frattini_quotient();
  int ia = -1, ib = -1;
  for (int k = 0; k < 3; ++k) {
    auto c = q.of(cand[k]);
    if (c[0] == 1 && c[1] == 0) ia = k;
    if (c[0] == 0 && c[1] == 1) ib = k;
  }

  bool ok = false;
  if (ia >= 0 && ib >= 0) {
    try {
      const Rank h = construct_for(cand[ia], cand[ib]).g;
      Rank g = h;
      if (ia == 2 || ib == 2) {
        const Basis change = (ia == 0 || ib == 0) ? Basis::xy_x : Basis::xy_y;
        g = lemma33_transfer(G, inversion_, x2, y2, h, change);
      }
      res.witness.g2 = basis.psi.apply(G, g);
      ok = verify_strong_real(G, s, res.witness);
    } catch (const NotAWitness&) {
      ok = false;
    }
  }
  if (ok) return res;

  res.constructive = false;
  res.used_fallback = true;
  auto g1 = inversion_witness(G, basis.theta, s.pair1.x, s.pair1.y);
  auto g2 = inversion_witness(G, basis.theta, s.pair2.x, s.pair2.y);
  if (!g1 || !g2) throw WitnessVerificationFailed("no strongly-real witness for the conjugated inversion");
  res.witness.g1 = *g1;
  res.witness.g2 = *g2;
  if (!verify_strong_real(G, s, res.witness)) throw WitnessVerificationFailed("fallback witness failed to verify");
  return res;
}

TheoremBResult theorem_b_witness(const GroupTable& G, const BeauvilleStructure& s) {
  TheoremBSolver solver(G);
  return solver.solve(s);
}

// ---------------------------------------------------------------------------
// Classification

const char* to_string(StrongRealClass c) {
  switch (c) {
    case StrongRealClass::purely_strongly_real:
      return "purely_strongly_real";
    case StrongRealClass::purely_non_strongly_real:
      return "purely_non_strongly_real";
    case StrongRealClass::mixed:
      return "mixed";
    case StrongRealClass::not_beauville:
      return "not_beauville";
    case StrongRealClass::unknown:
      return "unknown";
  }
  return "unknown";
}

Classification classify_structures(const GroupTable& G, const std::vector<Automorphism>& auts,
                                   const ClassifyOptions& opts) {
  if (!G.tabled()) throw TooLarge("classification needs a materialised group");
  Classification out;
  const auto& q = G.frattini_quotient();
  if (!q.available) {
    out.verdict = StrongRealClass::not_beauville;
    return out;
  }

  // theta(x) = (x^-1)^g forces theta(x) = x^-1 modulo G' <= Phi(G), for both
  // generators, so theta acts as -1 on G/Phi(G).
  std::vector<Automorphism> cand;
  for (const auto& theta : auts)
    if (induced_matrix_mod_frattini(G, theta).is_minus_identity(G.prime())) cand.push_back(theta);
  out.candidate_automorphisms = cand.size();

  if (cand.empty()) {
    auto found = find_beauville_structure(G, SearchOptions{.workers = opts.workers});
    if (found.found == Tri::yes) {
      out.verdict = StrongRealClass::purely_non_strongly_real;
      out.non_real_example = found.structure;
    } else {
      out.verdict = found.found == Tri::no ? StrongRealClass::not_beauville : StrongRealClass::unknown;
    }
    return out;
  }
  if (G.order() > opts.max_order) return out;

  for (auto& theta : cand) theta.materialize(G);
  const auto pairs = generating_pairs(G);
  out.generating_pairs = pairs.size();
  const std::size_t W = (cand.size() + 63) / 64;
  std::vector<std::uint64_t> wit(pairs.size() * W, 0);
  parallel_for(pairs.size(), opts.workers, [&](std::size_t i) {
    for (std::size_t c = 0; c < cand.size(); ++c)
      if (inversion_witness(G, cand[c], pairs[i].x, pairs[i].y))
        wit[i * W + c / 64] |= std::uint64_t{1} << (c % 64);
  });

  // Group pairs by (signature, witness set).
  SigmaIndex index(G);
  std::vector<SigmaIndex::Signature> sigs;
  std::map<SigmaIndex::Signature, std::uint32_t> sig_id;
  struct Key {
    std::uint32_t sig;
    std::vector<std::uint64_t> wit;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::uint32_t> key_id;
  std::vector<Key> keys;
  std::vector<std::uint64_t> count;
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto s = index.of(pairs[i].x, pairs[i].y);
    auto [sit, sfresh] = sig_id.try_emplace(s, static_cast<std::uint32_t>(sigs.size()));
    if (sfresh) sigs.push_back(s);
    Key k{sit->second, {wit.begin() + i * W, wit.begin() + (i + 1) * W}};
    auto [kit, kfresh] = key_id.try_emplace(k, static_cast<std::uint32_t>(keys.size()));
    if (kfresh) {
      keys.push_back(k);
      count.push_back(0);
      first.push_back(i);
    }
    ++count[kit->second];
  }

  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) {
      if (!index.disjoint(sigs[keys[a].sig], sigs[keys[b].sig])) continue;
      const std::uint64_t n = count[a] * count[b];
      out.structures += n;
      int common = -1;
      for (std::size_t w = 0; w < W && common < 0; ++w)
        if (auto both = keys[a].wit[w] & keys[b].wit[w]) common = static_cast<int>(w * 64 + std::countr_zero(both));
      BeauvilleStructure s = BeauvilleStructure{pairs[first[a]], pairs[first[b]]}.canonical();
      if (common >= 0) {
        out.strongly_real += n;
        if (!out.real_example) {
          const auto& theta = cand[static_cast<std::size_t>(common)];
          StrongRealWitness w{theta, *inversion_witness(G, theta, s.pair1.x, s.pair1.y),
                              *inversion_witness(G, theta, s.pair2.x, s.pair2.y)};
          out.real_example = s;
          out.real_witness = w;
        }
      } else if (!out.non_real_example) {
        out.non_real_example = s;
      }
    }
  }
  out.counted = true;
  if (out.structures == 0) {
    out.verdict = StrongRealClass::not_beauville;
  } else if (out.strongly_real == out.structures) {
    out.verdict = StrongRealClass::purely_strongly_real;
  } else if (out.strongly_real == 0) {
    out.verdict = StrongRealClass::purely_non_strongly_real;
  } else {
    out.verdict = StrongRealClass::mixed;
  }
  return out;
}

}  // namespace beauville
