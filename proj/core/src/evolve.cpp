#include "evolve.hpp"

#include "gply/error.hpp"
#include "gply/parallel.hpp"
#include "plan.hpp"

namespace gply::detail {

ClearedGate cleared_gate(const GaussRat& q) {
  GaussRat q2 = q * q;
  if (q.is_zero()) throw Error(ErrorCode::invalid_argument, "q must be nonzero");
  if (q2.is_one())
    throw Error(ErrorCode::degenerate_anisotropy, "q^2 = 1 (eta = 0) is a degenerate anisotropy point");
  std::vector<GaussRat> raw = {GaussRat(-1), q2, q2 - GaussRat(1), -q, q};
  mpz_class l;
  ZPoly z = zp_from_gaussrat(raw, &l);
  // zp_from_gaussrat trims trailing zeros; raw[4] = q is nonzero so nothing is lost
  mpz_class g = zp_make_primitive(z);
  ClearedGate cg{z[0], z[1], z[2], z[3], z[4], GaussRat(mpq_class(l, g))};
  return cg;
}

namespace {

void scaled_shift_acc(ZPoly& out, const ZPoly& v, const GaussInt& coef, std::size_t shift) {
  if (coef.is_zero()) return;
  for (std::size_t k = 0; k < v.size(); ++k) gi_addmul(out[k + shift], v[k], coef);
}

void reset(ZPoly& p, std::size_t n) {
  p.resize(n);
  for (auto& c : p) {
    mpz_set_ui(c.re.get_mpz_t(), 0);
    mpz_set_ui(c.im.get_mpz_t(), 0);
  }
}

mpz_class state_content(const std::vector<ZPoly>& st) {
  mpz_class g = 0;
  for (const auto& p : st) {
    for (const auto& c : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im.get_mpz_t());
      if (g == 1) return g;
    }
  }
  return g;
}

}  // namespace

ZEvolution evolve_z(const SectorBasis& basis, std::vector<ZPoly> init, const ClearedGate& gate, unsigned n,
                    unsigned stride) {
  if (init.size() != basis.size()) throw Error(ErrorCode::sector_mismatch, "state does not live in the sector");
  ZEvolution ev;
  ev.state = std::move(init);
  if (n == 0 || basis.M() == 0 || basis.M() == basis.L()) return ev;

  const std::vector<GateAction> plan = floquet_plan(basis);
  const std::size_t s = stride, s2 = 2 * stride;
  std::vector<ZPoly> next(ev.state.size());
  mpz_class kappa = 1;

  for (unsigned step = 0; step < n; ++step) {
    for (const auto& g : plan) {
      std::size_t width = 0;
      for (const auto& p : ev.state) width = std::max(width, p.size());
      const std::size_t out_size = width + s2;

      parallel_for(g.mixed.size(), [&](std::size_t idx) {
        auto [a, p] = g.mixed[idx];
        const ZPoly& va = ev.state[a];
        const ZPoly& vp = ev.state[p];
        ZPoly& na = next[a];
        ZPoly& np = next[p];
        reset(na, out_size);
        reset(np, out_size);
        scaled_shift_acc(na, va, gate.b1, s);
        scaled_shift_acc(na, vp, gate.c0, 0);
        scaled_shift_acc(na, vp, gate.c2, s2);
        scaled_shift_acc(np, vp, gate.b1, s);
        scaled_shift_acc(np, va, gate.c0, 0);
        scaled_shift_acc(np, va, gate.c2, s2);
        zp_trim(na);
        zp_trim(np);
      });
      parallel_for(g.diagonal.size(), [&](std::size_t idx) {
        std::size_t a = g.diagonal[idx];
        const ZPoly& va = ev.state[a];
        ZPoly& na = next[a];
        reset(na, out_size);
        scaled_shift_acc(na, va, gate.d0, 0);
        scaled_shift_acc(na, va, gate.d2, s2);
        zp_trim(na);
      });
      std::swap(ev.state, next);
      ++ev.K;
    }
    mpz_class c = state_content(ev.state);
    if (c > 1) {
      for (auto& p : ev.state) zp_divexact_int(p, c);
      kappa *= c;
    }
  }
  ev.scale = GaussRat(mpq_class(kappa)) / gate.lambda.pow(static_cast<long>(ev.K));
  return ev;
}

}  // namespace gply::detail

namespace gply {

ExactEvolution apply_floquet_exact(const ExactSectorState& state, const CircuitParams& params, unsigned n) {
  if (params.mode != Mode::exact)
    throw Error(ErrorCode::wrong_mode, "apply_floquet_exact requires an exact (Gaussian rational) q");
  if (state.basis.L() != params.L || state.basis.M() != params.M)
    throw Error(ErrorCode::sector_mismatch, "state sector (L=" + std::to_string(state.basis.L()) + ", M=" +
                                                std::to_string(state.basis.M()) + ") does not match params");
  if (state.coeffs.size() != state.basis.size())
    throw Error(ErrorCode::sector_mismatch, "coefficient vector length does not match the sector dimension");

  detail::ClearedGate gate = detail::cleared_gate(params.q);

  bool even_only = true;
  for (const auto& p : state.coeffs)
    for (std::size_t k = 1; k < p.size(); k += 2)
      if (!p[k].is_zero()) even_only = false;

  // common denominator of the input coefficients
  std::vector<GaussRat> all;
  for (const auto& p : state.coeffs) all.insert(all.end(), p.coeffs().begin(), p.coeffs().end());
  mpz_class l0 = 1;
  for (const auto& c : all) {
    mpz_lcm(l0.get_mpz_t(), l0.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(l0.get_mpz_t(), l0.get_mpz_t(), c.im().get_den_mpz_t());
  }
  std::vector<detail::ZPoly> init;
  for (const auto& p : state.coeffs) {
    DensePoly v = even_only ? p.compress_power(2) : p;
    std::vector<GaussRat> scaled = v.coeffs();
    for (auto& c : scaled) c *= GaussRat(mpq_class(l0));
    init.push_back(detail::zp_from_gaussrat(scaled));
  }

  detail::ZEvolution ev = detail::evolve_z(state.basis, std::move(init), gate, n, even_only ? 1 : 2);
  GaussRat scale = ev.scale / GaussRat(mpq_class(l0));

  ExactEvolution out;
  out.K = ev.K;
  out.state.basis = state.basis;
  for (const auto& z : ev.state) {
    std::vector<GaussRat> c = detail::zp_to_gaussrat(z);
    for (auto& v : c) v *= scale;
    DensePoly p(std::move(c));
    out.state.coeffs.push_back(even_only ? p.expand_power(2) : p);
  }
  return out;
}

}  // namespace gply
