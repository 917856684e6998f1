#include "beauville/families.hpp"

#include <sstream>

#include "beauville/errors.hpp"

namespace beauville {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

void require_prime(std::uint32_t p) { require(is_prime(p), std::to_string(p) + " is not a prime"); }

// g^{p^k}, or the empty word when that power is trivial because k == order.
Word power_or_empty(int g, std::uint32_t p, unsigned k, unsigned order_exp) {
  if (k >= order_exp) return {};
  return Word::gen(g, static_cast<std::int64_t>(ipow(p, k)));
}

PcPresentation metacyclic(const Metacyclic& m) {
  PcPresentation P;
  P.prime = m.p;
  int b = P.add_gen("b", ipow(m.p, m.e));
  int a = P.add_gen("a", ipow(m.p, m.e));
  // [a, b] = a^{p^i} means a^b = a^{1 + p^i}
  P.set_conj(b, a, Word::gen(a, static_cast<std::int64_t>(1 + ipow(m.p, m.i))));
  P.pair = std::pair{a, b};
  return P;
}

PcPresentation five_tuple(const Class2FiveTuple& t) {
  PcPresentation P;
  P.prime = t.p;
  int x = P.add_gen("x", ipow(t.p, t.alpha));
  int y = P.add_gen("y", ipow(t.p, t.beta));
  int c = P.add_gen("c", ipow(t.p, t.gamma));
  P.set_power(x, power_or_empty(c, t.p, t.rho, t.gamma));
  P.set_power(y, power_or_empty(c, t.p, t.sigma, t.gamma));
  // [x, y] = c and c central give y^x = y c^-1
  P.set_conj(x, y, Word::gen(y) * Word::gen(c, -1));
  P.pair = std::pair{x, y};
  P.defs[c] = Word::commutator(Word::gen(x), Word::gen(y));
  return P;
}

PcPresentation class2_beauville(const Class2Beauville& g) {
  PcPresentation P;
  P.prime = g.p;
  int a = P.add_gen("a", ipow(g.p, g.e));
  int b = P.add_gen("b", ipow(g.p, g.i));
  int c = P.add_gen("c", ipow(g.p, g.j));
  P.set_power(b, power_or_empty(c, g.p, g.k, g.j));
  // c = [b, a] gives b^a = b c
  P.set_conj(a, b, Word::gen(b) * Word::gen(c));
  P.pair = std::pair{a, b};
  P.defs[c] = Word::commutator(Word::gen(b), Word::gen(a));
  return P;
}

PcPresentation special_class2(const SpecialClass2& s) {
  PcPresentation P;
  P.prime = s.p;
  int x = P.add_gen("x", ipow(s.p, s.n));
  int y = P.add_gen("y", ipow(s.p, s.n));
  int z = P.add_gen("z", ipow(s.p, s.r));
  P.set_conj(x, y, Word::gen(y) * Word::gen(z, -1));
  P.pair = std::pair{x, y};
  P.defs[z] = Word::commutator(Word::gen(x), Word::gen(y));
  return P;
}

PcPresentation triangle(const TriangleQuotient& q) {
  PcPresentation P;
  P.prime = 2;
  const std::uint64_t big = ipow(2, q.e), small = ipow(2, q.e - 1);
  int x = P.add_gen("x", big);
  int y = P.add_gen("y", big);
  int z = P.add_gen("z", small);
  int t = P.add_gen("t", small);
  int w = P.add_gen("w", small);
  P.set_conj(x, y, Word::gen(y) * Word::gen(z));  // [y, x] = z
  P.set_conj(x, z, Word::gen(z) * Word::gen(t));  // [z, x] = t
  P.set_conj(y, z, Word::gen(z) * Word::gen(w));  // [z, y] = w
  P.pair = std::pair{x, y};
  P.defs[z] = Word::commutator(Word::gen(y), Word::gen(x));
  P.defs[t] = Word::commutator(Word::gen(z), Word::gen(x));
  P.defs[w] = Word::commutator(Word::gen(z), Word::gen(y));
  return P;
}

PcPresentation abelian(const Abelian& g) {
  PcPresentation P;
  P.prime = g.p;
  int x = P.add_gen("x", ipow(g.p, g.m));
  int y = P.add_gen("y", ipow(g.p, g.n));
  P.pair = std::pair{x, y};
  return P;
}

}  // namespace

std::string family_name(const FamilyParams& params) {
  return std::visit(overloaded{
                        [](const Metacyclic&) { return "metacyclic"; },
                        [](const Class2FiveTuple&) { return "class2-five-tuple"; },
                        [](const Class2Beauville&) { return "class2-beauville"; },
                        [](const SpecialClass2&) { return "special-class2"; },
                        [](const TriangleQuotient&) { return "triangle-quotient"; },
                        [](const Abelian&) { return "abelian"; },
                    },
                    params);
}

std::string describe(const FamilyParams& params) {
  std::ostringstream os;
  os << family_name(params);
  std::visit(overloaded{
                 [&](const Metacyclic& m) { os << '(' << m.p << ',' << m.e << ',' << m.i << ')'; },
                 [&](const Class2FiveTuple& t) {
                   os << '(' << t.p << ';' << t.alpha << ',' << t.beta << ',' << t.gamma << ';' << t.rho
                      << ',' << t.sigma << ')';
                 },
                 [&](const Class2Beauville& g) {
                   os << '(' << g.p << ',' << g.e << ',' << g.i << ',' << g.j << ',' << g.k << ')';
                 },
                 [&](const SpecialClass2& s) { os << '(' << s.p << ',' << s.n << ',' << s.r << ')'; },
                 [&](const TriangleQuotient& q) { os << '(' << q.e << ')'; },
                 [&](const Abelian& g) { os << '(' << g.p << ',' << g.m << ',' << g.n << ')'; },
             },
             params);
  return os.str();
}

void validate(const FamilyParams& params) {
  std::visit(overloaded{
                 [](const Metacyclic& m) {
                   require_prime(m.p);
                   require(m.i >= 1 && m.i + 1 <= m.e, "metacyclic needs 1 <= i <= e - 1");
                 },
                 [](const Class2FiveTuple& t) {
                   require_prime(t.p);
                   require(t.alpha >= t.beta && t.beta >= t.gamma && t.gamma >= 1,
                           "five-tuple needs alpha >= beta >= gamma >= 1");
                   require(t.rho <= t.gamma && t.sigma <= t.gamma, "five-tuple needs 0 <= rho, sigma <= gamma");
                 },
                 [](const Class2Beauville& g) {
                   require_prime(g.p);
                   require(g.k <= g.j && g.j <= g.i && g.i <= g.e, "needs 0 <= k <= j <= i <= e");
                   require(g.e + g.k == g.i + g.j, "needs e = i + j - k");
                   // j = 0 makes the commutator trivial and the group abelian
                   require(g.j >= 1, "needs j >= 1 for a non-abelian group");
                 },
                 [](const SpecialClass2& s) {
                   require_prime(s.p);
                   require(s.n >= s.r && s.r >= 1, "needs n >= r >= 1");
                 },
                 [](const TriangleQuotient& q) { require(q.e >= 2, "triangle quotient needs e >= 2"); },
                 [](const Abelian& g) {
                   require_prime(g.p);
                   require(g.m >= 1 && g.n >= 1, "abelian family needs m, n >= 1");
                 },
             },
             params);
  require(log_order(params) < 64, "group order does not fit in 64 bits");
}

unsigned log_order(const FamilyParams& params) {
  return std::visit(overloaded{
                        [](const Metacyclic& m) { return 2 * m.e; },
                        [](const Class2FiveTuple& t) { return t.alpha + t.beta + t.gamma; },
                        [](const Class2Beauville& g) { return g.e + g.i + g.j; },
                        [](const SpecialClass2& s) { return 2 * s.n + s.r; },
                        [](const TriangleQuotient& q) { return 2 * q.e + 3 * (q.e - 1); },
                        [](const Abelian& g) { return g.m + g.n; },
                    },
                    params);
}

PcPresentation presentation_of(const FamilyParams& params) {
  validate(params);
  return std::visit(overloaded{
                        [](const Metacyclic& m) { return metacyclic(m); },
                        [](const Class2FiveTuple& t) { return five_tuple(t); },
                        [](const Class2Beauville& g) { return class2_beauville(g); },
                        [](const SpecialClass2& s) { return special_class2(s); },
                        [](const TriangleQuotient& q) { return triangle(q); },
                        [](const Abelian& g) { return abelian(g); },
                    },
                    params);
}

GroupTable construct(const FamilyParams& params, const BuildOptions& opts) {
  return build_group(presentation_of(params), opts);
}

void require_family(const GroupTable& G, const FamilyParams& params) {
  if (!(G.presentation() == presentation_of(params)))
    throw NotInFamily("group was not built as " + describe(params));
}

bool metacyclic_beauville_predicate(std::uint32_t p, unsigned e, unsigned i) {
  validate(Metacyclic{p, e, i});
  return p >= 5;
}

bool class2_beauville_criterion(const GroupTable& G) {
  if (G.nilpotency_class() != 2) throw NotClass2("group has nilpotency class " + std::to_string(G.nilpotency_class()));
  const std::uint32_t p = G.prime();
  if (p == 2) throw EvenPrime("the class-2 criterion needs an odd prime");
  if (p < 5) return false;
  unsigned e = 0;
  for (std::uint64_t q = G.exponent(); q > 1; q /= p) ++e;
  return G.agemo(e - 1).size() >= std::uint64_t{p} * p;
}

std::vector<Class2FiveTuple> enumerate_class2_tuples(std::uint32_t p, std::uint64_t max_order) {
  require_prime(p);
  unsigned n = 0;
  for (std::uint64_t q = 1; q <= max_order / p; q *= p) ++n;
  std::vector<Class2FiveTuple> out;
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = 1; b <= a; ++b)
      for (unsigned c = 1; c <= b; ++c) {
        if (a + b + c > n) continue;
        for (unsigned r = 0; r <= c; ++r)
          for (unsigned s = 0; s <= c; ++s) out.push_back({p, a, b, c, r, s});
      }
  return out;
}

Rank class2_beauville_x(const GroupTable& G) { return G.inv(G.gen_rank(0)); }

}  // namespace beauville
