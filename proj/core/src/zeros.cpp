#include "gply/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gply/error.hpp"
#include "gply/parallel.hpp"

namespace gply {

using mp::Complex;
using mp::Real;

unsigned ZeroSet::total_multiplicity() const {
  unsigned s = 0;
  for (const auto& e : entries) s += e.multiplicity;
  return s;
}

namespace {

Real mag(const Complex& z) { return abs(z); }

std::vector<Complex> to_complex_coeffs(const DensePoly& p) {
  std::vector<Complex> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = mp::to_complex(p[k]);
  return c;
}

void horner2(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp) {
  p = c.back();
  dp = Complex();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex p = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) p = p * z + c[k];
  return p;
}

// sum_k |c_k| |z|^k
Real abs_horner(const std::vector<Real>& a, const Real& r) {
  Real s = a.back();
  for (std::size_t k = a.size() - 1; k-- > 0;) s = s * r + a[k];
  return s;
}

double log2_abs(const Complex& z) {
  Real m = abs(z);
  if (m == 0) return -HUGE_VAL;
  long e;
  double d = mpfr_get_d_2exp(&e, m.backend().data(), MPFR_RNDN);
  return std::log2(d) + static_cast<double>(e);
}

// Initial points on circles whose radii follow the upper convex hull of (k, log|c_k|).
std::vector<Complex> initial_points(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<double> lg(c.size());
  for (std::size_t k = 0; k <= n; ++k) lg[k] = log2_abs(c[k]);
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k <= n; ++k) {
    if (std::isinf(lg[k])) continue;
    while (hull.size() >= 2) {
      std::size_t i = hull[hull.size() - 2], j = hull.back();
      double cross = (lg[j] - lg[i]) * static_cast<double>(k - i) - (lg[k] - lg[i]) * static_cast<double>(j - i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  z.reserve(n);
  const Real two_pi = 2 * mp::pi();
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t i = hull[h], j = hull[h + 1];
    std::size_t m = j - i;
    double log_r = (lg[i] - lg[j]) / static_cast<double>(m);
    Real r = pow(Real(2), Real(log_r));
    Real offset = Real(0.7) + Real(static_cast<double>(h)) * Real(1.1);
    for (std::size_t t = 0; t < m; ++t) {
      Real theta = two_pi * Real(static_cast<double>(t)) / Real(static_cast<double>(m)) + offset;
      z.emplace_back(r * cos(theta), r * sin(theta));
    }
  }
  return z;
}

Real pow10(double e) { return pow(Real(10), Real(e)); }

}  // namespace

namespace {

// Coefficients split into MPFR real and imaginary parts plus moduli.
struct RawPoly {
  std::vector<Real> re, im, mod;
  explicit RawPoly(const std::vector<Complex>& c) : re(c.size()), im(c.size()), mod(c.size()) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      re[k] = mp::promote(c[k].real());
      im[k] = mp::promote(c[k].imag());
      mod[k] = abs(mp::promote(c[k]));
    }
  }
  std::size_t degree() const { return re.size() - 1; }
};

struct Work {
  Real pr, pi, dr, di, t, s;
  Work() : pr(0), pi(0), dr(0), di(0), t(0), s(0) {}
};

// p(z), p'(z) and sum |c_k| |z|^k without temporaries.
void raw_eval(const RawPoly& c, const Real& zr, const Real& zi, Work& w, Real* absval, bool deriv) {
  const std::size_t n = c.degree();
  mpfr_ptr pr = w.pr.backend().data(), pi = w.pi.backend().data();
  mpfr_ptr dr = w.dr.backend().data(), di = w.di.backend().data(), t = w.t.backend().data();
  mpfr_srcptr xr = zr.backend().data(), xi = zi.backend().data();
  mpfr_set(pr, c.re[n].backend().data(), MPFR_RNDN);
  mpfr_set(pi, c.im[n].backend().data(), MPFR_RNDN);
  mpfr_set_ui(dr, 0, MPFR_RNDN);
  mpfr_set_ui(di, 0, MPFR_RNDN);
  for (std::size_t k = n; k-- > 0;) {
    if (deriv) {
      mpfr_fmms(t, dr, xr, di, xi, MPFR_RNDN);
      mpfr_fmma(di, dr, xi, di, xr, MPFR_RNDN);
      mpfr_add(dr, t, pr, MPFR_RNDN);
      mpfr_add(di, di, pi, MPFR_RNDN);
    }
    mpfr_fmms(t, pr, xr, pi, xi, MPFR_RNDN);
    mpfr_fmma(pi, pr, xi, pi, xr, MPFR_RNDN);
    mpfr_add(pr, t, c.re[k].backend().data(), MPFR_RNDN);
    mpfr_add(pi, pi, c.im[k].backend().data(), MPFR_RNDN);
  }
  if (absval) {
    mpfr_ptr s = w.s.backend().data();
    mpfr_hypot(t, xr, xi, MPFR_RNDN);
    mpfr_set(s, c.mod[n].backend().data(), MPFR_RNDN);
    for (std::size_t k = n; k-- > 0;) mpfr_fma(s, s, t, c.mod[k].backend().data(), MPFR_RNDN);
    *absval = w.s;
  }
}

// sum_{j != i} 1 / (z_i - z_j)
void raw_pair_sum(const std::vector<Real>& zr, const std::vector<Real>& zi, std::size_t i, Work& w) {
  mpfr_ptr sr = w.pr.backend().data(), si = w.pi.backend().data();
  mpfr_ptr ar = w.dr.backend().data(), ai = w.di.backend().data(), nn = w.t.backend().data();
  mpfr_set_ui(sr, 0, MPFR_RNDN);
  mpfr_set_ui(si, 0, MPFR_RNDN);
  for (std::size_t j = 0; j < zr.size(); ++j) {
    if (j == i) continue;
    mpfr_sub(ar, zr[i].backend().data(), zr[j].backend().data(), MPFR_RNDN);
    mpfr_sub(ai, zi[i].backend().data(), zi[j].backend().data(), MPFR_RNDN);
    mpfr_fmma(nn, ar, ar, ai, ai, MPFR_RNDN);
    mpfr_div(ar, ar, nn, MPFR_RNDN);
    mpfr_div(ai, ai, nn, MPFR_RNDN);
    mpfr_add(sr, sr, ar, MPFR_RNDN);
    mpfr_sub(si, si, ai, MPFR_RNDN);
  }
}

// Aberth-Ehrlich at the current precision from the given points. A root stops moving once its
// correction is below 10^(-digits/2) relative or its backward error reaches rounding level.
bool aberth_iterate(const std::vector<Complex>& coeffs, std::vector<Complex>& z, unsigned max_iterations) {
  RawPoly c(coeffs);
  const std::size_t n = z.size();
  std::vector<Real> zr(n), zi(n);
  for (std::size_t i = 0; i < n; ++i) {
    zr[i] = mp::promote(z[i].real());
    zi[i] = mp::promote(z[i].imag());
  }
  const Real tol = pow10(-0.5 * static_cast<double>(mp::current_digits()));
  const Real eta = Real(8 * (n + 1)) * mp::epsilon();
  std::vector<char> done(n, 0);
  std::vector<Complex> corr(n);
  bool all_done = false;
  for (unsigned it = 0; it < max_iterations && !all_done; ++it) {
    parallel_for(n, [&](std::size_t i) {
      corr[i] = Complex();
      if (done[i]) return;
      Work w;
      Real absval;
      raw_eval(c, zr[i], zi[i], w, &absval, true);
      Complex p(w.pr, w.pi), dp(w.dr, w.di);
      if (abs(p) <= eta * absval) {
        done[i] = 2;
        return;
      }
      if (dp == Complex()) return;
      raw_pair_sum(zr, zi, i, w);
      Complex ratio = p / dp;
      corr[i] = ratio / (Complex(Real(1)) - ratio * Complex(w.pr, w.pi));
    });
    all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] == 2) done[i] = 1;
      if (done[i]) continue;
      zr[i] -= corr[i].real();
      zi[i] -= corr[i].imag();
      Real m = sqrt(zr[i] * zr[i] + zi[i] * zi[i]);
      if (abs(corr[i]) <= tol * std::max(m, tol)) done[i] = 1;
      else all_done = false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) z[i] = Complex(zr[i], zi[i]);
  return all_done;
}

using LComplex = std::complex<long double>;

long double to_ld(const Real& v) { return mpfr_get_ld(v.backend().data(), MPFR_RNDN); }

// Cheap starting phase in extended precision.
void aberth_long_double(const std::vector<Complex>& coeffs, std::vector<Complex>& z, unsigned max_iterations) {
  const std::size_t n = z.size();
  long double big = 0;
  std::vector<LComplex> c(coeffs.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = LComplex(to_ld(coeffs[k].real()), to_ld(coeffs[k].imag()));
    big = std::max(big, std::abs(c[k]));
  }
  if (!std::isfinite(big) || big == 0) return;
  for (auto& v : c) v /= big;
  std::vector<long double> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) a[k] = std::abs(c[k]);
  std::vector<LComplex> x(n), corr(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = LComplex(to_ld(z[i].real()), to_ld(z[i].imag()));
  const long double eta = 8.0L * static_cast<long double>(n + 1) * std::numeric_limits<long double>::epsilon();
  std::vector<char> done(n, 0);
  for (unsigned it = 0; it < max_iterations; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      corr[i] = 0;
      if (done[i]) continue;
      LComplex p = c.back(), dp = 0;
      long double r = std::abs(x[i]), s = a.back();
      for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * x[i] + p;
        p = p * x[i] + c[k];
        s = s * r + a[k];
      }
      if (!std::isfinite(s) || std::abs(p) <= eta * s) {
        done[i] = 1;
        continue;
      }
      long double sr = 0, si = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        long double dr = x[i].real() - x[j].real(), di = x[i].imag() - x[j].imag();
        long double nn = dr * dr + di * di;
        sr += dr / nn;
        si -= di / nn;
      }
      LComplex ratio = p / dp;
      corr[i] = ratio / (1.0L - ratio * LComplex(sr, si));
      if (!std::isfinite(corr[i].real()) || !std::isfinite(corr[i].imag())) corr[i] = 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      x[i] -= corr[i];
      if (std::abs(corr[i]) <= 1e-15L * std::max(std::abs(x[i]), 1e-15L)) done[i] = 1;
      else moved = true;
    }
    if (!moved) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(x[i].real()) && std::isfinite(x[i].imag()))
      z[i] = Complex(Real(x[i].real()), Real(x[i].imag()));
}

}  // namespace

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs_in, unsigned max_iterations, bool* converged) {
  std::vector<Complex> c(coeffs_in.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = mp::promote(coeffs_in[k]);
  while (!c.empty() && c.back() == Complex()) c.pop_back();
  if (c.size() < 2) throw Error(ErrorCode::invalid_argument, "aberth_roots needs degree >= 1");
  if (c[0] == Complex()) throw Error(ErrorCode::invalid_argument, "aberth_roots needs a nonzero constant term");
  if (c.size() == 2) {
    if (converged) *converged = true;
    return {-c[0] / c[1]};
  }
  std::vector<Complex> z = initial_points(c);
  aberth_long_double(c, z, max_iterations);
  bool ok = aberth_iterate(c, z, max_iterations);
  if (converged) *converged = ok;
  return z;
}

namespace {

struct FactorRoots {
  std::vector<Complex> roots;
  std::vector<Real> radii;
  bool ok = true;
  std::string note;
};

std::vector<Real> inclusion_radii(const std::vector<Complex>& coeffs, const std::vector<Complex>& z) {
  const std::size_t n = z.size();
  RawPoly c(coeffs);
  std::vector<Real> zr(n), zi(n);
  for (std::size_t i = 0; i < n; ++i) {
    zr[i] = mp::promote(z[i].real());
    zi[i] = mp::promote(z[i].imag());
  }
  const Real u = mp::epsilon();
  const Real lc = c.mod.back();
  std::vector<Real> r(n);
  parallel_for(n, [&](std::size_t i) {
    Work w;
    Real absval;
    raw_eval(c, zr[i], zi[i], w, &absval, false);
    Real err = sqrt(w.pr * w.pr + w.pi * w.pi) + Real(4 * c.re.size() + 4) * u * absval;
    mpfr_ptr prod = w.s.backend().data(), ar = w.dr.backend().data(), ai = w.di.backend().data(),
             nn = w.t.backend().data();
    mpfr_set_ui(prod, 1, MPFR_RNDN);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      mpfr_sub(ar, zr[i].backend().data(), zr[j].backend().data(), MPFR_RNDN);
      mpfr_sub(ai, zi[i].backend().data(), zi[j].backend().data(), MPFR_RNDN);
      mpfr_fmma(nn, ar, ar, ai, ai, MPFR_RNDN);
      mpfr_mul(prod, prod, nn, MPFR_RNDN);
    }
    Real p = lc * sqrt(w.s);
    r[i] = p == 0 ? Real(HUGE_VAL) : Real(static_cast<double>(n)) * err / p;
  });
  return r;
}

bool disjoint(const std::vector<Complex>& z, const std::vector<Real>& r) {
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Real> lo(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) lo[i] = z[i].real() - r[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo[a] < lo[b]; });
  for (std::size_t x = 0; x < order.size(); ++x) {
    std::size_t i = order[x];
    Real hi = z[i].real() + r[i];
    for (std::size_t y = x + 1; y < order.size() && lo[order[y]] <= hi; ++y) {
      std::size_t j = order[y];
      if (abs(z[i] - z[j]) <= r[i] + r[j]) return false;
    }
  }
  return true;
}

// Independent Newton iterations, stopping per root once the step is below stop relative
// or the value is at rounding level.
void newton(const std::vector<Complex>& coeffs, std::vector<Complex>& z, int max_steps, const Real& stop) {
  RawPoly c(coeffs);
  const Real eta = Real(2 * coeffs.size()) * mp::epsilon();
  parallel_for(z.size(), [&](std::size_t i) {
    Work w;
    Real absval;
    Real zr = mp::promote(z[i].real()), zi = mp::promote(z[i].imag());
    for (int it = 0; it < max_steps; ++it) {
      raw_eval(c, zr, zi, w, &absval, true);
      Complex dp(w.dr, w.di);
      if (sqrt(w.pr * w.pr + w.pi * w.pi) <= eta * absval) break;
      if (dp == Complex()) break;
      Complex step = Complex(w.pr, w.pi) / dp;
      zr -= step.real();
      zi -= step.imag();
      if (abs(step) <= stop * std::max(sqrt(zr * zr + zi * zi), Real(1))) break;
    }
    z[i] = Complex(zr, zi);
  });
}

// Roots of a square-free factor f(x) = g(x^k) with g(0) != 0.
FactorRoots roots_of_factor(const DensePoly& f, unsigned target_digits, unsigned max_iterations) {
  FactorRoots out;
  unsigned k = std::max(1u, f.exponent_stride());
  DensePoly g = f.compress_power(k);

  // Aberth at modest precision, escalating while the disks overlap.
  std::vector<Complex> s;
  unsigned w = std::min(target_digits, 40u);
  for (;;) {
    mp::ScopedPrecision prec(w);
    std::vector<Complex> gc = to_complex_coeffs(g);
    bool conv = false;
    if (s.empty()) {
      s = aberth_roots(gc, max_iterations, &conv);
    } else {
      for (auto& v : s) v = mp::promote(v);
      conv = aberth_iterate(gc, s, max_iterations);
    }
    if (conv && disjoint(s, inclusion_radii(gc, s))) break;
    if (w >= 2 * target_digits) {
      out.ok = false;
      out.note = "Aberth iteration did not separate the roots";
      break;
    }
    w = std::min(2 * w, 2 * target_digits);
  }

  // Newton polish and inclusion disks in s = x^k, raising the working precision until the
  // disks are small enough; results are then rounded to the target precision.
  const Real limit = pow10(-0.5 * target_digits);
  std::vector<Real> rho;
  bool small = false;
  unsigned wp = target_digits;
  for (;;) {
    mp::ScopedPrecision prec(wp);
    for (auto& v : s) v = mp::promote(v);
    std::vector<Complex> gc = to_complex_coeffs(g);
    newton(gc, s, 60, pow10(-0.9 * wp));
    rho = inclusion_radii(gc, s);
    small = disjoint(s, rho);
    for (std::size_t i = 0; small && i < s.size(); ++i)
      if (rho[i] >= limit * std::max(abs(s[i]), Real(1)) / Real(4 * k)) small = false;
    if (small || wp >= 4 * target_digits) break;
    wp *= 2;
  }
  if (!small) {
    out.ok = false;
    out.note = "inclusion radius above 10^(-digits/2)";
  }

  // x = s^(1/k) w^j; near s a disk of radius rho maps into one of radius 2 rho / (k |s|^(1-1/k)).
  mp::ScopedPrecision prec(wp);
  out.roots.reserve(s.size() * k);
  out.radii.reserve(s.size() * k);
  const Real two_pi = 2 * mp::pi();
  const Real ulp = pow10(1.0 - target_digits);
  for (std::size_t i = 0; i < s.size(); ++i) {
    Complex base = k == 1 ? s[i] : exp(log(s[i]) / Real(static_cast<double>(k)));
    Real ms = abs(s[i]);
    Real r = k == 1 ? rho[i] : 2 * rho[i] / (Real(static_cast<double>(k)) * ms / abs(base));
    if (k > 1 && rho[i] * Real(2 * k) > ms) r = Real(HUGE_VAL);
    for (unsigned j = 0; j < k; ++j) {
      Real th = two_pi * Real(static_cast<double>(j)) / Real(static_cast<double>(k));
      Complex xj = j == 0 ? base : base * Complex(cos(th), sin(th));
      Real rj = r + ulp * abs(xj);
      {
        mp::ScopedPrecision back(target_digits);
        out.roots.push_back(mp::promote(xj));
        out.radii.push_back(mp::promote(rj));
      }
    }
  }
  if (out.ok && !disjoint(out.roots, out.radii)) {
    out.ok = false;
    out.note = "inclusion disks overlap";
  }
  for (std::size_t i = 0; out.ok && i < out.roots.size(); ++i)
    if (out.radii[i] >= limit * std::max(abs(out.roots[i]), Real(1))) {
      out.ok = false;
      out.note = "inclusion radius above 10^(-digits/2)";
    }
  return out;
}

}  // namespace

ZeroSet find_zeros(const DensePoly& p, const ZeroOptions& opts) {
  if (p.is_zero()) throw Error(ErrorCode::zero_polynomial, "find_zeros on the zero polynomial");
  if (p.degree() < 1) throw Error(ErrorCode::invalid_argument, "find_zeros needs degree >= 1");
  unsigned digits = opts.digits ? opts.digits : (p.degree() > 1000 ? 256u : 64u);

  SquarefreeOptions sfo;
  sfo.modular_certificate = opts.modular_certificate;
  std::vector<SquarefreeFactor> factors = squarefree_decompose(p, sfo);

  ZeroSet zs;
  zs.degree = p.degree();
  zs.digits = digits;
  zs.valid = true;
  mp::ScopedPrecision prec(digits);

  for (const auto& sf : factors) {
    if (sf.factor.degree() == 1 && sf.factor[0].is_zero()) {
      ZeroEntry e;
      e.root = Complex();
      e.multiplicity = sf.multiplicity;
      e.radius = Real(0);
      zs.entries.push_back(e);
      continue;
    }
    FactorRoots fr = roots_of_factor(sf.factor, digits, opts.max_iterations);
    mp::ScopedPrecision again(digits);
    if (!fr.ok) {
      zs.valid = false;
      if (zs.note.empty()) zs.note = fr.note;
    }
    for (std::size_t i = 0; i < fr.roots.size(); ++i) {
      ZeroEntry e;
      e.root = mp::promote(fr.roots[i]);
      e.multiplicity = sf.multiplicity;
      e.radius = mp::promote(fr.radii[i]);
      zs.entries.push_back(e);
    }
  }

  std::vector<Complex> pc = to_complex_coeffs(p);
  std::vector<Real> pa(pc.size());
  for (std::size_t k = 0; k < pc.size(); ++k) pa[k] = abs(pc[k]);
  parallel_for(zs.entries.size(), [&](std::size_t i) {
    const Complex& z = zs.entries[i].root;
    zs.entries[i].residual = abs(horner(pc, z)) / abs_horner(pa, abs(z));
  });

  std::sort(zs.entries.begin(), zs.entries.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
    Real aa = arg(a.root), ab = arg(b.root);
    if (aa != ab) return aa < ab;
    return abs(a.root) < abs(b.root);
  });
  if (zs.total_multiplicity() != static_cast<unsigned>(p.degree())) {
    zs.valid = false;
    zs.note = "multiplicity count differs from the degree";
  }
  return zs;
}

CertificationReport certify_zeros(const DensePoly& p, const ZeroSet& zs) {
  CertificationReport rep;
  unsigned digits = zs.digits ? zs.digits : mp::current_digits();
  mp::ScopedPrecision prec(digits);
  const std::size_t n = zs.entries.size();

  rep.count_ok = zs.total_multiplicity() == static_cast<unsigned>(p.degree());
  if (!rep.count_ok)
    rep.detail += "multiplicity sum " + std::to_string(zs.total_multiplicity()) + " != degree " +
                  std::to_string(p.degree()) + "; ";

  std::vector<Complex> z(n);
  std::vector<Real> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = mp::promote(zs.entries[i].root);
    r[i] = mp::promote(zs.entries[i].radius);
  }
  rep.separation_ok = disjoint(z, r);
  if (!rep.separation_ok) rep.detail += "inclusion disks overlap; ";

  // monic product vs p / lc, errors measured against prod (x + |z_i|)
  std::vector<Complex> prod{Complex(Real(1))};
  std::vector<Real> absprod{Real(1)};
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned m = 0; m < zs.entries[i].multiplicity; ++m) {
      prod.push_back(Complex());
      absprod.push_back(Real(0));
      Real az = abs(z[i]);
      for (std::size_t k = prod.size() - 1; k > 0; --k) {
        prod[k] = prod[k - 1] - z[i] * prod[k];
        absprod[k] = absprod[k - 1] + az * absprod[k];
      }
      prod[0] = -z[i] * prod[0];
      absprod[0] = az * absprod[0];
    }
  Real worst = 0;
  if (prod.size() == p.size()) {
    Complex lc = mp::to_complex(p.lead());
    for (std::size_t k = 0; k < p.size(); ++k) {
      Complex target = mp::to_complex(p[k]) / lc;
      Real e = abs(prod[k] - target) / absprod[k];
      worst = std::max(worst, e);
    }
    rep.max_reconstruction_error = static_cast<double>(worst);
    rep.reconstruction_ok = worst <= pow10(-0.25 * digits);
  } else {
    rep.reconstruction_ok = false;
    rep.max_reconstruction_error = HUGE_VAL;
  }
  if (!rep.reconstruction_ok) rep.detail += "reconstruction error " + mp::to_string(worst, 6) + "; ";

  rep.residual_ok = true;
  const Real limit = pow10(-0.5 * digits);
  for (std::size_t i = 0; i < n; ++i)
    if (zs.entries[i].radius >= limit * std::max(abs(z[i]), Real(1))) rep.residual_ok = false;
  if (!rep.residual_ok) rep.detail += "inclusion radius above 10^(-digits/2); ";

  rep.usable = rep.count_ok && rep.separation_ok && rep.reconstruction_ok && rep.residual_ok;
  return rep;
}

}  // namespace gply
