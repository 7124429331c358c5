#include "gply/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

#include "gply/error.hpp"
#include "gply/parallel.hpp"
#include "linalg.hpp"

namespace gply {

using mp::Complex;
using mp::Real;

Real UniversalLocus::distance(const Complex& x) const {
  if (kind == LocusKind::axes) return std::min(abs(x.real()), abs(x.imag()));
  return abs(abs(x) - Real(radius));
}

std::string UniversalLocus::description() const {
  switch (kind) {
    case LocusKind::unit_circle: return "unit_circle";
    case LocusKind::axes: return "real_axis+imaginary_axis";
    case LocusKind::circle: return "circle r=" + std::to_string(radius);
  }
  return "";
}

namespace {

UniversalLocus locus_for(Regime r) {
  UniversalLocus u;
  u.regime = r;
  if (r == Regime::massive) u.kind = LocusKind::unit_circle;
  else if (r == Regime::massless) u.kind = LocusKind::axes;
  else
    throw Error(ErrorCode::unsupported_regime,
                "universal loci are defined only for real q (massive) or unimodular q (massless)");
  return u;
}

}  // namespace

UniversalLocus universal_locus(const GaussRat& q) { return locus_for(classify_regime(q)); }
UniversalLocus universal_locus(const Complex& q) { return locus_for(classify_regime(q)); }

UniversalLocus circle_locus(double radius) {
  if (!(radius > 0)) throw Error(ErrorCode::invalid_argument, "circle radius must be positive");
  UniversalLocus u;
  u.kind = radius == 1 ? LocusKind::unit_circle : LocusKind::circle;
  u.radius = radius;
  return u;
}

DensityReport zero_density(const ZeroSet& zs, const UniversalLocus& locus, double eps, unsigned n, double delta) {
  if (zs.entries.empty()) throw Error(ErrorCode::invalid_argument, "zero_density on an empty zero set");
  if (!(eps >= 0)) throw Error(ErrorCode::invalid_argument, "eps must be nonnegative");
  DensityReport rep;
  rep.delta = delta;
  rep.eps = eps;
  rep.n = n;
  const Real e(eps);
  for (const auto& z : zs.entries) {
    rep.total += z.multiplicity;
    if (locus.distance(z.root) <= e) rep.within += z.multiplicity;
  }
  rep.R = static_cast<double>(rep.within) / static_cast<double>(rep.total);
  return rep;
}

std::vector<double> eps_grid(double lo, double hi, unsigned points) {
  if (!(lo > 0) || !(hi > lo) || points < 2) throw Error(ErrorCode::invalid_argument, "bad eps grid");
  std::vector<double> g(points);
  const double a = std::log(lo), b = std::log(hi);
  for (unsigned i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * i / (points - 1));
  return g;
}

ScalingFit fit_density_scaling(const std::vector<DensityReport>& reports) {
  std::vector<double> distinct;
  for (const auto& r : reports) distinct.push_back(r.eps);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4) throw Error(ErrorCode::invalid_argument, "fit needs at least 4 distinct eps values");

  ScalingFit fit;
  std::vector<double> lx, ly;
  for (const auto& r : reports) {
    if (!(r.eps > 0)) {
      fit.notes.push_back("eps <= 0 excluded");
      continue;
    }
    if (r.R >= 1) {
      fit.notes.push_back("eps=" + std::to_string(r.eps) + " excluded: R = 1");
      continue;
    }
    fit.eps_grid.push_back(r.eps);
    lx.push_back(std::log(r.eps));
    ly.push_back(std::log(1 - r.R));
  }
  if (lx.size() < 2) throw Error(ErrorCode::invalid_argument, "fewer than two usable points after excluding R = 1");
  const double m = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.r = sxx > 0 ? sxy / sxx : 0;
  fit.c = std::exp(my - fit.r * mx);
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double d = ly[i] - (std::log(fit.c) + fit.r * lx[i]);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / m);
  fit.degenerate = std::abs(fit.r) < 1e-3;
  if (fit.degenerate) fit.notes.push_back("exponent indistinguishable from zero");
  return fit;
}

AnisotropyChoice choose_anisotropy(double delta, unsigned max_den) {
  if (!std::isfinite(delta)) throw Error(ErrorCode::invalid_argument, "anisotropy must be finite");
  if (std::abs(std::abs(delta) - 1) < 1e-12)
    throw Error(ErrorCode::degenerate_anisotropy, "|delta| = 1 is the degenerate point q = +-1");
  if (max_den < 1) throw Error(ErrorCode::invalid_argument, "max_denominator must be positive");
  AnisotropyChoice best;
  double best_err = HUGE_VAL;
  if (std::abs(delta) > 1) {
    const double target = delta > 0 ? delta + std::sqrt(delta * delta - 1) : delta - std::sqrt(delta * delta - 1);
    for (long v = 1; v <= static_cast<long>(max_den); ++v) {
      long u = std::lround(target * static_cast<double>(v));
      for (long cand : {u - 1, u, u + 1}) {
        if (cand == 0 || std::abs(cand) == v) continue;
        double q = static_cast<double>(cand) / static_cast<double>(v);
        double d = (q + 1 / q) / 2;
        if (std::abs(d - delta) < best_err - 1e-15) {
          best_err = std::abs(d - delta);
          best.q = GaussRat(mpq_class(cand, v));
          best.delta = d;
        }
      }
    }
    best.regime = Regime::massive;
  } else {
    // Re q = (b^2 - a^2)/(a^2 + b^2) with t = a/b in (0, infinity)
    for (long b = 1; b <= static_cast<long>(max_den); ++b)
      for (long a = 1; a <= static_cast<long>(4 * max_den); ++a) {
        double t = static_cast<double>(a) / static_cast<double>(b);
        double d = (1 - t * t) / (1 + t * t);
        if (std::abs(d - delta) < best_err - 1e-15) {
          mpz_class den = mpz_class(a) * a + mpz_class(b) * b;
          GaussRat q(mpq_class(mpz_class(b) * b - mpz_class(a) * a, den), mpq_class(mpz_class(2) * a * b, den));
          if ((q * q).is_one()) continue;
          best_err = std::abs(d - delta);
          best.q = q;
          best.delta = d;
        }
      }
    best.regime = Regime::massless;
  }
  if (!std::isfinite(best_err)) throw Error(ErrorCode::invalid_argument, "no anisotropy candidate found");
  return best;
}

std::vector<SweepPoint> delta_sweep(const InitialState& state, const std::vector<double>& deltas, unsigned n,
                                    double eps, Projection projection, unsigned max_den) {
  std::vector<SweepPoint> out;
  for (double target : deltas) {
    SweepPoint pt;
    pt.target_delta = target;
    pt.report.delta = target;
    pt.report.eps = eps;
    pt.report.n = n;
    auto t0 = std::chrono::steady_clock::now();
    try {
      pt.choice = choose_anisotropy(target, max_den);
      CircuitParams params = CircuitParams::exact(pt.choice.q, state.L, state.M);
      AmplitudeResult amp = loschmidt_exact(state, params, n, projection);
      ZeroNumerator num = numerator_for_zeros(amp);
      pt.degree = num.degree;
      if (num.degree < 1) {
        pt.note = "numerator has no zeros";
      } else {
        ZeroSet zs = find_zeros(num.poly);
        pt.certified = zs.valid;
        if (!zs.valid) pt.note = zs.note;
        pt.report = zero_density(zs, universal_locus(pt.choice.q), eps, n, pt.choice.delta);
      }
    } catch (const Error& e) {
      pt.note = e.what();
    }
    pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(pt));
  }
  return out;
}

namespace {

using DC = std::complex<double>;

DC to_dc(const Complex& z) { return DC(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

// Pairs every root with its image under the map; defect is relative to max(1, |z|).
SymmetryCheck closure(const ZeroSet& zs, Complex (*map)(const Complex&)) {
  SymmetryCheck chk;
  chk.tested = true;
  const std::size_t n = zs.entries.size();
  std::vector<DC> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = to_dc(zs.entries[i].root);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return roots[a].real() < roots[b].real(); });
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = roots[order[i]].real();

  mp::ScopedPrecision prec(zs.digits ? zs.digits : mp::current_digits());
  Real worst = 0;
  bool mult_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    Complex image = map(mp::promote(zs.entries[i].root));
    DC im = to_dc(image);
    // nearest candidate, widening the window until one is found
    double window = 1e-6 * std::max(1.0, std::abs(im));
    std::size_t best = n;
    double bestd = HUGE_VAL;
    for (int tries = 0; tries < 40 && best == n; ++tries, window *= 4) {
      auto lo = std::lower_bound(xs.begin(), xs.end(), im.real() - window) - xs.begin();
      auto hi = std::upper_bound(xs.begin(), xs.end(), im.real() + window) - xs.begin();
      for (auto k = lo; k < hi; ++k) {
        double d = std::abs(roots[order[k]] - im);
        if (d < bestd && d <= window) {
          bestd = d;
          best = order[k];
        }
      }
    }
    Real defect(HUGE_VAL);
    if (best < n) {
      defect = abs(zs.entries[best].root - image) / std::max(Real(1), abs(image));
      if (zs.entries[best].multiplicity != zs.entries[i].multiplicity) mult_ok = false;
    }
    if (i == 0 || defect > worst) {
      worst = defect;
      chk.worst_root = zs.entries[i].root;
    }
  }
  chk.max_defect = static_cast<double>(worst);
  const double digits = zs.digits ? zs.digits : 20;
  chk.pass = mult_ok && worst <= pow(Real(10), Real(-digits / 4));
  return chk;
}

Complex rotate_i(const Complex& z) { return Complex(-z.imag(), z.real()); }
Complex conjugate(const Complex& z) { return Complex(z.real(), -z.imag()); }

}  // namespace

SymmetryReport symmetry_report(const ZeroSet& zs, const CircuitParams& params) {
  SymmetryReport rep;
  if (zs.entries.empty()) {
    rep.z4 = {true, true, 0, Complex()};
    return rep;
  }
  rep.z4 = closure(zs, rotate_i);
  bool real_q = params.mode == Mode::exact ? params.q.is_real() : params.q_numeric().imag() == 0;
  if (real_q) rep.conjugation = closure(zs, conjugate);
  return rep;
}

std::vector<Complex> ScanGrid::points() const {
  std::vector<Complex> pts;
  if (n_radial < 1 || n_angular < 1) throw Error(ErrorCode::invalid_argument, "empty scan grid");
  if (kind == Kind::polar) {
    if (!(lo > 0) || !(hi >= lo)) throw Error(ErrorCode::invalid_argument, "polar grid needs 0 < lo <= hi");
    const Real two_pi = 2 * mp::pi();
    for (unsigned a = 0; a < n_radial; ++a) {
      Real r = n_radial == 1 ? Real(lo) : Real(lo) + (Real(hi) - Real(lo)) * Real(a) / Real(n_radial - 1);
      for (unsigned b = 0; b < n_angular; ++b) {
        Real th = two_pi * Real(b) / Real(n_angular);
        pts.emplace_back(r * cos(th), r * sin(th));
      }
    }
  } else {
    if (!(hi > lo)) throw Error(ErrorCode::invalid_argument, "cartesian grid needs lo < hi");
    for (unsigned a = 0; a < n_radial; ++a)
      for (unsigned b = 0; b < n_angular; ++b) {
        Real re = Real(lo) + (Real(hi) - Real(lo)) * Real(a) / Real(std::max(1u, n_radial - 1));
        Real im = Real(lo) + (Real(hi) - Real(lo)) * Real(b) / Real(std::max(1u, n_angular - 1));
        pts.emplace_back(re, im);
      }
  }
  return pts;
}

double ScanGrid::spacing() const {
  if (kind == Kind::polar) {
    double dr = n_radial > 1 ? (hi - lo) / (n_radial - 1) : 0;
    double da = 2 * M_PI * hi / n_angular;
    return std::max(dr, da);
  }
  return (hi - lo) / std::max(1u, std::min(n_radial, n_angular) - 1);
}

ScanResult equimodular_scan(const CircuitParams& params, const ScanGrid& grid, const ScanOptions& opts) {
  mp::ScopedPrecision prec(opts.digits ? opts.digits : mp::current_digits());
  const int M = params.M;
  if (M < 0 || M > params.L) throw Error(ErrorCode::invalid_argument, "scan sector out of range");
  std::vector<long> ket, bra;
  GaussRat bra_scale(1);
  if (opts.state) {
    if (opts.state->L != params.L) throw Error(ErrorCode::sector_mismatch, "state and params disagree on L");
    auto it = opts.state->sectors.find(M);
    if (it == opts.state->sectors.end())
      throw Error(ErrorCode::sector_mismatch, "state " + opts.state->name() + " has no component in sector M=" +
                                                  std::to_string(M) + "; weights are undefined");
    ket = it->second;
    bra = projected_bra(*opts.state, M, opts.projection, &bra_scale);
  }

  ScanResult res;
  res.spacing = grid.spacing();
  const std::vector<Complex> pts = grid.points();
  res.scanned = pts.size();
  struct Slot {
    bool ok = false;
    bool universal = false;
    bool state_dependent = false;
    ScanPoint point;
    std::string note;
  };
  std::vector<Slot> slots(pts.size());
  const Real tol(opts.tolerance);
  const Complex bs = mp::to_complex(bra_scale);

  parallel_for(pts.size(), [&](std::size_t i) {
    Slot& s = slots[i];
    s.point.x = pts[i];
    try {
      mp::CMatrix U = floquet_matrix_numeric(params, pts[i], params.L, M);
      std::vector<Complex> lam;
      std::vector<Complex> w;
      if (opts.state) {
        detail::EigenSystem es = detail::eigen_system(U);
        lam = es.values;
        w.resize(lam.size());
        for (std::size_t j = 0; j < lam.size(); ++j) {
          Complex br, lk;
          for (std::size_t a = 0; a < lam.size(); ++a) {
            if (bra[a] != 0) br += Real(bra[a]) * es.right(a, j);
            if (ket[a] != 0) lk += es.left(j, a) * Real(ket[a]);
          }
          w[j] = bs * br * lk;
        }
      } else {
        lam = detail::eigenvalues(U);
        w.assign(lam.size(), Complex(Real(1)));
      }
      // merge degenerate eigenvalues into single branches
      std::vector<std::size_t> idx(lam.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return abs(lam[a]) > abs(lam[b]); });
      Real top = abs(lam[idx[0]]);
      const Real merge = top * pow(Real(10), -Real(static_cast<double>(mp::current_digits())) / 3);
      std::vector<Complex> bl, bw;
      for (std::size_t j : idx) {
        bool merged = false;
        for (std::size_t b = 0; b < bl.size(); ++b)
          if (abs(bl[b] - lam[j]) <= merge) {
            bw[b] += w[j];
            merged = true;
            break;
          }
        if (!merged) {
          bl.push_back(lam[j]);
          bw.push_back(w[j]);
        }
      }
      Real total_w = 0;
      for (const auto& x : bw) total_w += abs(x);
      if (opts.state && total_w > 0) {
        // branches the state does not see at all (symmetry zeros) never compete
        const Real floor = total_w * pow(Real(10), -Real(static_cast<double>(mp::current_digits())) / 2);
        std::vector<Complex> kl, kw;
        for (std::size_t b = 0; b < bl.size(); ++b)
          if (abs(bw[b]) > floor) {
            kl.push_back(bl[b]);
            kw.push_back(bw[b]);
          }
        bl.swap(kl);
        bw.swap(kw);
      }
      if (bl.empty()) throw Error(ErrorCode::sector_mismatch, "state has no weight on this sector");
      Real gap = bl.size() > 1 ? (abs(bl[0]) - abs(bl[1])) / abs(bl[0]) : Real(1);
      s.point.gap = static_cast<double>(gap);
      s.point.weight = opts.state && total_w > 0 ? static_cast<double>(abs(bw[0]) / total_w) : 1.0;
      s.universal = bl.size() > 1 && gap < tol;
      s.state_dependent = opts.state && !s.universal && Real(s.point.weight) < tol;
      s.ok = true;
    } catch (const Error& e) {
      s.note = "x=" + mp::to_string(pts[i], 8) + " skipped: " + e.what();
    }
  });
  for (auto& s : slots) {
    if (!s.ok) {
      res.notes.push_back(s.note);
      continue;
    }
    if (s.universal) res.universal.push_back(s.point);
    if (s.state_dependent) res.state_dependent.push_back(s.point);
  }
  return res;
}

}  // namespace gply
