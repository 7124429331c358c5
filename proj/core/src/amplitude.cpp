#include "gply/amplitude.hpp"

#include <chrono>

#include "evolve.hpp"
#include "gply/error.hpp"
#include "gply/parallel.hpp"

namespace gply {

using detail::GaussInt;
using detail::ZPoly;

StateKind parse_state_kind(const std::string& name) {
  if (name == "dw" || name == "domain_wall" || name == "domain-wall") return StateKind::domain_wall;
  if (name == "dimer") return StateKind::dimer;
  if (name == "neel") return StateKind::neel;
  if (name == "crosscap") return StateKind::crosscap;
  throw Error(ErrorCode::invalid_argument, "unknown state '" + name + "' (dw, dimer, neel, crosscap)");
}

const char* state_kind_name(StateKind k) {
  switch (k) {
    case StateKind::domain_wall: return "dw";
    case StateKind::dimer: return "dimer";
    case StateKind::neel: return "neel";
    case StateKind::crosscap: return "crosscap";
  }
  return "dw";
}

Projection parse_projection(const std::string& name) {
  if (name == "none") return Projection::none;
  if (name == "zero-momentum" || name == "zero_momentum") return Projection::zero_momentum;
  throw Error(ErrorCode::invalid_argument, "unknown projection '" + name + "' (none, zero-momentum)");
}

const char* projection_name(Projection p) { return p == Projection::none ? "none" : "zero-momentum"; }

long InitialState::norm2() const {
  long s = 0;
  for (const auto& [m, v] : sectors)
    for (long c : v) s += c * c;
  return s;
}

std::string InitialState::name() const {
  std::string s = state_kind_name(kind);
  if (kind == StateKind::domain_wall) s += "(" + std::to_string(M) + ")";
  return s + " L=" + std::to_string(L);
}

namespace {

std::uint64_t site_mask(int L, int site) { return std::uint64_t{1} << SectorBasis::site_bit(L, site); }

void add_component(InitialState& st, std::uint64_t bits, long coeff) {
  int m = __builtin_popcountll(bits);
  auto it = st.sectors.find(m);
  if (it == st.sectors.end()) it = st.sectors.emplace(m, std::vector<long>(SectorBasis(st.L, m).size(), 0)).first;
  SectorBasis basis(st.L, m);
  it->second[basis.index(bits)] += coeff;
}

}  // namespace

InitialState build_initial_state(StateKind kind, int L, int M) {
  if (L <= 0 || L % 2 != 0 || L > 30) throw Error(ErrorCode::invalid_argument, "L must be even with 2 <= L <= 30");
  InitialState st;
  st.kind = kind;
  st.L = L;
  const int half = L / 2;
  switch (kind) {
    case StateKind::domain_wall: {
      if (M < 0 || M > L) throw Error(ErrorCode::invalid_argument, "domain wall requires 0 <= M <= L");
      st.M = M;
      std::uint64_t bits = 0;
      for (int s = 1; s <= M; ++s) bits |= site_mask(L, s);
      add_component(st, bits, 1);
      break;
    }
    case StateKind::neel: {
      st.M = half;
      std::uint64_t bits = 0;
      for (int s = 2; s <= L; s += 2) bits |= site_mask(L, s);
      add_component(st, bits, 1);
      break;
    }
    case StateKind::dimer: {
      st.M = half;
      for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << half); ++choice) {
        std::uint64_t bits = 0;
        long sign = 1;
        for (int j = 0; j < half; ++j) {
          bool flip = (choice >> (half - 1 - j)) & 1;  // 0: |10>, 1: -|01>
          bits |= site_mask(L, flip ? 2 * j + 2 : 2 * j + 1);
          if (flip) sign = -sign;
        }
        add_component(st, bits, sign);
      }
      break;
    }
    case StateKind::crosscap: {
      st.M = -1;
      for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << half); ++choice) {
        std::uint64_t bits = 0;
        for (int j = 1; j <= half; ++j)
          if ((choice >> (half - j)) & 1) bits |= site_mask(L, j) | site_mask(L, j + half);
        add_component(st, bits, 1);
      }
      break;
    }
  }
  return st;
}

std::vector<long> projected_bra(const InitialState& state, int M, Projection projection, GaussRat* bra_scale) {
  auto it = state.sectors.find(M);
  if (it == state.sectors.end()) throw Error(ErrorCode::sector_mismatch, "state has no component in sector M");
  if (bra_scale) *bra_scale = GaussRat(1);
  if (projection == Projection::none) return it->second;

  SectorBasis basis(state.L, M);
  const int L = state.L;
  const std::uint64_t full = (L == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << L) - 1);
  std::vector<long> bra(basis.size(), 0);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    long c = it->second[a];
    if (c == 0) continue;
    std::uint64_t s = basis.state(a);
    for (int k = 0; k < L / 2; ++k) {
      bra[basis.index(s)] += c;
      s = ((s >> 2) | (s << (L - 2))) & full;  // translate by two sites
    }
  }
  if (bra_scale) *bra_scale = GaussRat(mpq_class(2, L));
  return bra;
}

namespace {

struct SectorAmplitude {
  GaussRat scale;  // amplitude = scale * num / d(t)^K, d = q^2 t^2 - 1
  ZPoly num;       // in t = x^2
  unsigned K = 0;
};

// u, v coprime Gaussian integers with q = u / v.
void split_q(const GaussRat& q, GaussInt& u, GaussInt& v) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), q.re().get_den_mpz_t(), q.im().get_den_mpz_t());
  GaussInt u0{q.re().get_num() * (den / q.re().get_den()), q.im().get_num() * (den / q.im().get_den())};
  GaussInt v0{den, 0};
  GaussInt g = detail::gi_gcd(u0, v0);
  detail::gi_divexact(u, u0, g);
  detail::gi_divexact(v, v0, g);
}

unsigned strip_linear(ZPoly& num, const ZPoly& factor, unsigned max_times) {
  unsigned count = 0;
  ZPoly quot;
  while (count < max_times && !num.empty() && detail::zp_divexact(quot, num, factor)) {
    num = std::move(quot);
    ++count;
  }
  return count;
}

DensePoly t_to_x(const std::vector<GaussRat>& coeffs_t) { return DensePoly(coeffs_t).expand_power(2); }

DensePoly binomial_power(const GaussRat& c0, unsigned stride, unsigned e) {
  // (x^stride + c0)^e
  std::vector<GaussRat> v(static_cast<std::size_t>(stride) * e + 1);
  mpz_class binom = 1;
  GaussRat cpow = GaussRat(1);
  std::vector<GaussRat> powers(e + 1);
  for (unsigned k = 0; k <= e; ++k) {
    powers[k] = cpow;
    cpow *= c0;
  }
  for (unsigned k = 0; k <= e; ++k) {
    // coefficient of x^(stride*k): C(e,k) c0^(e-k)
    v[static_cast<std::size_t>(stride) * k] = GaussRat(mpq_class(binom)) * powers[e - k];
    binom = binom * (e - k) / (k + 1);
  }
  return DensePoly(std::move(v));
}

DensePoly normalize_for_report(const DensePoly& p) {
  DensePoly pp = primitive_part(p);
  const GaussRat& anchor = pp[0].is_zero() ? pp.lead() : pp[0];
  if (anchor.is_real() && sgn(anchor.re()) > 0) return pp;
  DensePoly rotated = pp.scaled(anchor.conj());
  DensePoly out = primitive_part(rotated);
  const GaussRat& a2 = out[0].is_zero() ? out.lead() : out[0];
  if (sgn(a2.re()) < 0) out = out.scaled(-1);
  return out;
}

bool only_multiples_of_four(const DensePoly& p) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (k % 4 != 0 && !p[k].is_zero()) return false;
  return true;
}

}  // namespace

AmplitudeResult loschmidt_exact(const InitialState& state, const CircuitParams& params, unsigned n,
                                Projection projection) {
  if (params.mode != Mode::exact)
    throw Error(ErrorCode::wrong_mode,
                "loschmidt_exact needs an exact Gaussian-rational q; use loschmidt_numeric in float mode");
  if (params.L != state.L) throw Error(ErrorCode::sector_mismatch, "params.L does not match the state");
  auto t0 = std::chrono::steady_clock::now();

  const detail::ClearedGate gate = detail::cleared_gate(params.q);

  std::vector<int> sectors;
  for (const auto& [m, v] : state.sectors) sectors.push_back(m);
  std::vector<SectorAmplitude> parts(sectors.size());

  for (std::size_t idx = 0; idx < sectors.size(); ++idx) {
    const int m = sectors[idx];
    SectorBasis basis(state.L, m);
    const std::vector<long>& ket = state.sectors.at(m);
    GaussRat bra_scale;
    std::vector<long> bra = projected_bra(state, m, projection, &bra_scale);
    std::vector<ZPoly> init(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
      if (ket[a] != 0) init[a] = ZPoly{GaussInt{ket[a], 0}};
    detail::ZEvolution ev = detail::evolve_z(basis, std::move(init), gate, n, 1);
    ZPoly acc;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      if (bra[a] == 0 || ev.state[a].empty()) continue;
      if (acc.size() < ev.state[a].size()) acc.resize(ev.state[a].size());
      GaussInt c{bra[a], 0};
      for (std::size_t k = 0; k < ev.state[a].size(); ++k) detail::gi_addmul(acc[k], ev.state[a][k], c);
    }
    detail::zp_trim(acc);
    parts[idx] = {ev.scale * bra_scale, std::move(acc), ev.K};
  }

  // common denominator d^Kmax
  unsigned Kmax = 0;
  for (const auto& p : parts) Kmax = std::max(Kmax, p.K);
  GaussRat scale;
  ZPoly num;
  if (parts.size() == 1) {
    scale = parts[0].scale;
    num = std::move(parts[0].num);
  } else {
    DensePoly d_t({GaussRat(-1), 0, params.q * params.q});
    DensePoly total;
    for (const auto& p : parts) {
      DensePoly term(detail::zp_to_gaussrat(p.num));
      term = term.scaled(p.scale) * d_t.pow(Kmax - p.K);
      total = total + term;
    }
    mpz_class l;
    num = detail::zp_from_gaussrat(total.coeffs(), &l);
    scale = GaussRat(mpq_class(1)) / GaussRat(mpq_class(l));
  }
  if (num.empty())
    throw Error(ErrorCode::identically_zero, "the Loschmidt amplitude is identically zero for this input");

  GaussInt u, v;
  split_q(params.q, u, v);
  GaussInt neg_v{-v.re, -v.im};
  ZPoly f_minus{neg_v, u};  // u t - v
  ZPoly f_plus{v, u};       // u t + v
  unsigned removed_minus = strip_linear(num, f_minus, Kmax);
  unsigned removed_plus = strip_linear(num, f_plus, Kmax);
  const unsigned a = Kmax - removed_minus, b = Kmax - removed_plus;

  // amplitude = scale * v^(2K) / u^(a+b) * num(t) / ((t - 1/q)^a (t + 1/q)^b)
  GaussRat ur(mpq_class(u.re), mpq_class(u.im)), vr(mpq_class(v.re), mpq_class(v.im));
  GaussRat factor = scale * vr.pow(2 * static_cast<long>(Kmax)) / ur.pow(static_cast<long>(a + b));
  std::vector<GaussRat> coeffs = detail::zp_to_gaussrat(num);
  for (auto& c : coeffs) c *= factor;
  DensePoly numerator_x = t_to_x(coeffs);

  const GaussRat qinv = params.q.inverse();
  const unsigned e = std::min(a, b);
  DensePoly den = binomial_power(-(qinv * qinv), 4, e);
  DensePoly common = DensePoly::constant(1);
  if (a > e) common = binomial_power(-qinv, 2, a - e);
  if (b > e) common = binomial_power(qinv, 2, b - e);
  if (common.degree() > 0) den = den * common;

  AmplitudeResult res;
  res.reduced = RationalFn(numerator_x, den);
  res.normalized_numerator = normalize_for_report(numerator_x);
  res.unit = numerator_x.lead() / res.normalized_numerator.lead();
  res.numerator_degree = numerator_x.degree();
  res.x4_support = only_multiples_of_four(res.normalized_numerator);
  res.denominator = {a, b, e, common, Kmax};
  res.n = n;
  res.params = params;
  res.projection = projection;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

mp::Complex loschmidt_numeric(const InitialState& state, const CircuitParams& params, const mp::Complex& x0,
                              unsigned n, Projection projection) {
  if (params.L != state.L) throw Error(ErrorCode::sector_mismatch, "params.L does not match the state");
  GateValues g = gate_values(params.q_numeric(), mp::promote(x0));
  mp::Complex total;
  for (const auto& [m, ket] : state.sectors) {
    SectorBasis basis(state.L, m);
    GaussRat bra_scale;
    std::vector<long> bra = projected_bra(state, m, projection, &bra_scale);
    mp::CVector v(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) v[a] = mp::Complex(mp::Real(ket[a]));
    for (unsigned step = 0; step < n; ++step) apply_floquet_numeric(v, basis, g);
    mp::Complex acc;
    for (std::size_t a = 0; a < basis.size(); ++a)
      if (bra[a] != 0) acc += mp::Real(bra[a]) * v[a];
    total += acc * mp::to_complex(bra_scale);
  }
  return total;
}

ZeroNumerator numerator_for_zeros(const AmplitudeResult& result) {
  if (result.reduced.num().is_zero())
    throw Error(ErrorCode::identically_zero, "identically zero amplitude has no zero set");
  ZeroNumerator z;
  z.poly = result.normalized_numerator;
  z.degree = z.poly.degree();
  z.x4_support = result.x4_support;
  return z;
}

}  // namespace gply
