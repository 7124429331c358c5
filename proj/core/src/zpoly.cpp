#include "zpoly.hpp"

#include <algorithm>
#include <mutex>

#include "gply/error.hpp"

namespace gply::detail {

void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

void gi_addmul(GaussInt& r, const GaussInt& a, const GaussInt& b) {
  mpz_addmul(r.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
  if (sgn(a.im) != 0 && sgn(b.im) != 0) mpz_submul(r.re.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
  if (sgn(b.im) != 0) mpz_addmul(r.im.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
  if (sgn(a.im) != 0) mpz_addmul(r.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
}

void gi_submul(GaussInt& r, const GaussInt& a, const GaussInt& b) {
  mpz_submul(r.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
  if (sgn(a.im) != 0 && sgn(b.im) != 0) mpz_addmul(r.re.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
  if (sgn(b.im) != 0) mpz_submul(r.im.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
  if (sgn(a.im) != 0) mpz_submul(r.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
}

GaussInt gi_mul(const GaussInt& a, const GaussInt& b) {
  GaussInt r;
  gi_addmul(r, a, b);
  return r;
}

namespace {

// nearest-integer division, ties away from zero
mpz_class round_div(const mpz_class& a, const mpz_class& n) {
  mpz_class twice = 2 * a + n;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * n).get_mpz_t());
  return q;
}

}  // namespace

GaussInt gi_gcd(GaussInt a, GaussInt b) {
  while (!b.is_zero()) {
    mpz_class n = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussInt q{round_div(re, n), round_div(im, n)};
    GaussInt r = a;
    gi_submul(r, q, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool gi_divexact(GaussInt& out, const GaussInt& a, const GaussInt& b) {
  if (b.is_zero()) throw Error(ErrorCode::zero_denominator, "Gaussian integer division by zero");
  if (sgn(b.im) == 0) {
    if (!mpz_divisible_p(a.re.get_mpz_t(), b.re.get_mpz_t()) ||
        !mpz_divisible_p(a.im.get_mpz_t(), b.re.get_mpz_t()))
      return false;
    mpz_divexact(out.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_divexact(out.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    return true;
  }
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  if (!mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t()))
    return false;
  mpz_divexact(out.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(out.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return true;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] = a[k];
    if (k < b.size()) {
      r[k].re += b[k].re;
      r[k].im += b[k].im;
    }
  }
  zp_trim(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] = a[k];
    if (k < b.size()) {
      r[k].re -= b[k].re;
      r[k].im -= b[k].im;
    }
  }
  zp_trim(r);
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) gi_addmul(r[i + j], a[i], b[j]);
  }
  zp_trim(r);
  return r;
}

ZPoly zp_scale(const ZPoly& a, const GaussInt& c) {
  ZPoly r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) gi_addmul(r[k], a[k], c);
  zp_trim(r);
  return r;
}

ZPoly zp_derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) {
    r[k - 1].re = a[k].re * static_cast<unsigned long>(k);
    r[k - 1].im = a[k].im * static_cast<unsigned long>(k);
  }
  zp_trim(r);
  return r;
}

mpz_class zp_content(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void zp_divexact_int(ZPoly& p, const mpz_class& c) {
  if (c == 1) return;
  for (auto& v : p) {
    mpz_divexact(v.re.get_mpz_t(), v.re.get_mpz_t(), c.get_mpz_t());
    mpz_divexact(v.im.get_mpz_t(), v.im.get_mpz_t(), c.get_mpz_t());
  }
}

mpz_class zp_make_primitive(ZPoly& p) {
  mpz_class c = zp_content(p);
  if (c > 1) zp_divexact_int(p, c);
  return c;
}

bool zp_divexact(ZPoly& quot, const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw Error(ErrorCode::zero_denominator, "polynomial division by zero");
  if (a.empty()) {
    quot.clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  const std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    GaussInt& lead = r[k + db];
    if (lead.is_zero()) continue;
    if (!gi_divexact(q[k], lead, b.back())) return false;
    for (std::size_t j = 0; j <= db; ++j) gi_submul(r[k + j], q[k], b[j]);
  }
  for (std::size_t k = 0; k < db; ++k)
    if (!r[k].is_zero()) return false;
  zp_trim(q);
  quot = std::move(q);
  return true;
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b
ZPoly zp_prem(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  const std::size_t db = b.size() - 1;
  const GaussInt& lb = b.back();
  int e = zp_degree(a) - zp_degree(b) + 1;
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    GaussInt lr = r.back();
    for (auto& c : r) c = gi_mul(c, lb);
    for (std::size_t j = 0; j <= db; ++j) gi_submul(r[shift + j], lr, b[j]);
    zp_trim(r);
    --e;
  }
  GaussInt pw;
  pw.re = 1;
  for (int k = 0; k < e; ++k) pw = gi_mul(pw, lb);
  if (e > 0)
    for (auto& c : r) c = gi_mul(c, pw);
  return r;
}

GaussInt gi_pow(const GaussInt& a, int e) {
  GaussInt r;
  r.re = 1;
  for (int k = 0; k < e; ++k) r = gi_mul(r, a);
  return r;
}

}  // namespace

ZPoly zp_gcd(const ZPoly& a0, const ZPoly& b0) {
  ZPoly a = a0, b = b0;
  if (a.empty()) {
    zp_make_primitive(b);
    return b;
  }
  if (b.empty()) {
    zp_make_primitive(a);
    return a;
  }
  if (a.size() < b.size()) std::swap(a, b);
  zp_make_primitive(a);
  zp_make_primitive(b);
  GaussInt g, h;
  g.re = 1;
  h.re = 1;
  while (true) {
    int delta = zp_degree(a) - zp_degree(b);
    ZPoly r = zp_prem(a, b);
    if (r.empty()) break;
    if (r.size() == 1) {
      ZPoly one(1);
      one[0].re = 1;
      return one;
    }
    a = std::move(b);
    GaussInt div = gi_mul(g, gi_pow(h, delta));
    b.resize(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
      if (!gi_divexact(b[k], r[k], div))
        throw Error(ErrorCode::invalid_argument, "subresultant division not exact");
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else {
      GaussInt num = gi_pow(g, delta);
      GaussInt den = gi_pow(h, delta - 1);
      if (!gi_divexact(h, num, den)) throw Error(ErrorCode::invalid_argument, "subresultant h not exact");
    }
  }
  zp_make_primitive(b);
  return b;
}

ZPoly zp_from_gaussrat(const std::vector<GaussRat>& coeffs, mpz_class* scale) {
  mpz_class l = 1;
  for (const auto& c : coeffs) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
  }
  ZPoly r(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    r[k].re = coeffs[k].re().get_num() * (l / coeffs[k].re().get_den());
    r[k].im = coeffs[k].im().get_num() * (l / coeffs[k].im().get_den());
  }
  zp_trim(r);
  if (scale) *scale = l;
  return r;
}

std::vector<GaussRat> zp_to_gaussrat(const ZPoly& p) {
  std::vector<GaussRat> r;
  r.reserve(p.size());
  for (const auto& c : p) r.emplace_back(mpq_class(c.re), mpq_class(c.im));
  return r;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

}  // namespace

const std::vector<ModPrime>& mod_primes() {
  static std::vector<ModPrime> primes;
  static std::once_flag once;
  std::call_once(once, [] {
    mpz_class c = (mpz_class(1) << 61);
    while (primes.size() < 8) {
      mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
      if (mpz_fdiv_ui(c.get_mpz_t(), 4) != 1) continue;
      std::uint64_t p = c.get_ui();
      for (std::uint64_t a = 2;; ++a) {
        // a is a non-residue iff a^((p-1)/2) = -1
        if (powmod(a, (p - 1) / 2, p) == p - 1) {
          primes.push_back({p, powmod(a, (p - 1) / 4, p)});
          break;
        }
      }
    }
  });
  return primes;
}

std::vector<std::uint64_t> zp_reduce_mod(const ZPoly& a, const ModPrime& mp) {
  std::vector<std::uint64_t> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::uint64_t re = mpz_fdiv_ui(a[k].re.get_mpz_t(), mp.p);
    std::uint64_t im = mpz_fdiv_ui(a[k].im.get_mpz_t(), mp.p);
    r[k] = (re + mulmod(im, mp.sqrt_m1, mp.p)) % mp.p;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

int modp_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t p) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() >= b.size()) {
      std::uint64_t inv = invmod(b.back(), p);
      while (a.size() >= b.size()) {
        std::uint64_t f = mulmod(a.back(), inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
          std::uint64_t t = mulmod(f, b[j], p);
          a[shift + j] = a[shift + j] >= t ? a[shift + j] - t : a[shift + j] + p - t;
        }
        trim(a);
        if (a.empty()) break;
      }
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace gply::detail
