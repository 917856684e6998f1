#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "beauville/pcgroup.hpp"
#include "beauville/presentation.hpp"

namespace beauville {

/// <a, b | a^{p^e} = b^{p^e} = 1, [a, b] = a^{p^i}>, 1 <= i <= e - 1.
///
/// Realised on pc generators (b, a), so normal forms read b^beta a^alpha.
struct Metacyclic {
  std::uint32_t p = 5;
  unsigned e = 2;
  unsigned i = 1;
  friend bool operator==(const Metacyclic&, const Metacyclic&) = default;
};

/// <x, y | [x,y]^{p^gamma} = [x,y,x] = [x,y,y] = 1,
///         x^{p^alpha} = [x,y]^{p^rho}, y^{p^beta} = [x,y]^{p^sigma}>
/// with alpha >= beta >= gamma >= 1 and 0 <= rho, sigma <= gamma.
///
/// Pc generators (x, y, c) with c = [x, y].
struct Class2FiveTuple {
  std::uint32_t p = 2;
  unsigned alpha = 1, beta = 1, gamma = 1, rho = 0, sigma = 0;
  friend bool operator==(const Class2FiveTuple&, const Class2FiveTuple&) = default;
};

/// <a, b | a^{p^e} = [b,a]^{p^j} = [b,a,a] = [b,a,b] = 1, b^{p^i} = [b,a]^{p^k}>
/// with 0 <= k <= j <= i <= e and e = i + j - k.
///
/// Pc generators (a, b, c) with c = [b, a]. The coordinates x = a^-1, y = b
/// recover the five-tuple form (e, i, j; j, k).
struct Class2Beauville {
  std::uint32_t p = 5;
  unsigned e = 3, i = 2, j = 2, k = 1;
  friend bool operator==(const Class2Beauville&, const Class2Beauville&) = default;
};

/// <x, y, z | x^{p^n} = y^{p^n} = z^{p^r} = [x,z] = [y,z] = 1, [x,y] = z>
/// with n >= r >= 1.
struct SpecialClass2 {
  std::uint32_t p = 5;
  unsigned n = 1, r = 1;
  friend bool operator==(const SpecialClass2&, const SpecialClass2&) = default;
};

/// <x, y, z, t, w | x^{2^e} = y^{2^e} = z^{2^{e-1}} = t^{2^{e-1}} = w^{2^{e-1}} = 1,
///                  [y,x] = z, [z,x] = t, [z,y] = w>, e >= 2.
///
/// The class-3 quotient of the (2^e, 2^e, 2^e) triangle group.
struct TriangleQuotient {
  unsigned e = 2;
  friend bool operator==(const TriangleQuotient&, const TriangleQuotient&) = default;
};

/// C_{p^m} x C_{p^n} on generators (x, y).
struct Abelian {
  std::uint32_t p = 5;
  unsigned m = 1, n = 1;
  friend bool operator==(const Abelian&, const Abelian&) = default;
};

using FamilyParams =
    std::variant<Metacyclic, Class2FiveTuple, Class2Beauville, SpecialClass2, TriangleQuotient, Abelian>;

/// "metacyclic", "class2-five-tuple", "class2-beauville", "special-class2",
/// "triangle-quotient" or "abelian".
std::string family_name(const FamilyParams& params);
std::string describe(const FamilyParams& params);

/// Throws InvalidParams when the parameter constraints of the family fail.
void validate(const FamilyParams& params);

/// The pc presentation of the family group, including its distinguished pair
/// and the definitions of the derived generators.
PcPresentation presentation_of(const FamilyParams& params);

/// Log base p of the group order.
unsigned log_order(const FamilyParams& params);

GroupTable construct(const FamilyParams& params, const BuildOptions& opts = {});

/// Throws NotInFamily unless G was built from presentation_of(params).
void require_family(const GroupTable& G, const FamilyParams& params);

/// A non-abelian metacyclic p-group with these parameters is Beauville
/// exactly when p >= 5.
bool metacyclic_beauville_predicate(std::uint32_t p, unsigned e, unsigned i);

/// For class-2 groups over an odd prime: p >= 5 and |G^{p^{e-1}}| >= p^2,
/// where p^e = exp G. Throws NotClass2 or EvenPrime when inapplicable.
bool class2_beauville_criterion(const GroupTable& G);

/// All five-tuples with p^{alpha+beta+gamma} <= max_order, lexicographic in
/// (alpha, beta, gamma, rho, sigma).
std::vector<Class2FiveTuple> enumerate_class2_tuples(std::uint32_t p, std::uint64_t max_order);

/// The Class2Beauville element x = a^-1 (the second coordinate y is b).
Rank class2_beauville_x(const GroupTable& G);

}  // namespace beauville
