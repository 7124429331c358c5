#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "gply/gauss_rat.hpp"

namespace gply::detail {

struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
};

// Dense polynomial over Z[i], degree ascending, no trailing zeros.
using ZPoly = std::vector<GaussInt>;

void zp_trim(ZPoly& p);
inline int zp_degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

// r += a*b
void gi_addmul(GaussInt& r, const GaussInt& a, const GaussInt& b);
void gi_submul(GaussInt& r, const GaussInt& a, const GaussInt& b);
GaussInt gi_mul(const GaussInt& a, const GaussInt& b);
GaussInt gi_gcd(GaussInt a, GaussInt b);
// Returns false when b does not divide a in Z[i].
bool gi_divexact(GaussInt& out, const GaussInt& a, const GaussInt& b);

ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const ZPoly& a, const GaussInt& c);
ZPoly zp_derivative(const ZPoly& a);

mpz_class zp_content(const ZPoly& p);
void zp_divexact_int(ZPoly& p, const mpz_class& c);
// Divides out the positive integer content; returns it.
mpz_class zp_make_primitive(ZPoly& p);

// Exact quotient a / b in Z[i][x]; returns false if b does not divide a.
bool zp_divexact(ZPoly& quot, const ZPoly& a, const ZPoly& b);

// Subresultant gcd over Z[i][x], integer content removed.
ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);

// Conversions. from_dense returns L * p with L the lcm of coefficient denominators.
ZPoly zp_from_gaussrat(const std::vector<GaussRat>& coeffs, mpz_class* scale = nullptr);
std::vector<GaussRat> zp_to_gaussrat(const ZPoly& p);

// Modular arithmetic over F_p with i mapped to a square root of -1 (p = 1 mod 4).
struct ModPrime {
  std::uint64_t p;
  std::uint64_t sqrt_m1;
};
const std::vector<ModPrime>& mod_primes();
std::vector<std::uint64_t> zp_reduce_mod(const ZPoly& a, const ModPrime& mp);
int modp_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t p);

}  // namespace gply::detail
