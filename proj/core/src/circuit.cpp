#include "gply/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "gply/error.hpp"
#include "plan.hpp"

namespace gply {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::massive: return "massive";
    case Regime::massless: return "massless";
    case Regime::other: return "other";
  }
  return "other";
}

Regime classify_regime(const GaussRat& q) {
  if (q.is_zero()) return Regime::other;
  GaussRat q2 = q * q;
  if (q2.is_one()) return Regime::other;
  if (q.is_real()) return Regime::massive;
  if (q.norm() == 1) return Regime::massless;
  return Regime::other;
}

Regime classify_regime(const mp::Complex& q) {
  const mp::Real tol("1e-12");
  mp::Real aq = abs(q);
  if (aq == 0) return Regime::other;
  bool real = abs(q.imag()) <= tol * aq;
  bool unimodular = abs(aq - 1) <= tol;
  if (real && unimodular) return Regime::other;
  if (real) return Regime::massive;
  if (unimodular) return Regime::massless;
  return Regime::other;
}

CircuitParams CircuitParams::exact(const GaussRat& q, int L, int M) {
  CircuitParams p;
  p.mode = Mode::exact;
  p.q = q;
  p.L = L;
  p.M = M;
  return p;
}

CircuitParams CircuitParams::floating(const mp::Complex& q, int L, int M) {
  CircuitParams p;
  p.mode = Mode::floating;
  p.q_float = q;
  p.L = L;
  p.M = M;
  return p;
}

Regime CircuitParams::regime() const {
  return mode == Mode::exact ? classify_regime(q) : classify_regime(q_numeric());
}

mp::Complex CircuitParams::q_numeric() const {
  return mode == Mode::exact ? mp::to_complex(q) : mp::promote(q_float);
}

mp::Complex CircuitParams::delta() const {
  mp::Complex qn = q_numeric();
  return (qn + mp::Complex(mp::Real(1)) / qn) / mp::Real(2);
}

GaussRat CircuitParams::delta_exact() const {
  if (mode != Mode::exact) throw Error(ErrorCode::wrong_mode, "exact anisotropy requested in float mode");
  return (q + q.inverse()) / GaussRat(2);
}

CircuitParams CircuitParams::with_sector(int m) const {
  CircuitParams p = *this;
  p.M = m;
  return p;
}

GateEntries gate_entries(const GaussRat& q) {
  if (q.is_zero()) throw Error(ErrorCode::invalid_argument, "q must be nonzero");
  GaussRat q2 = q * q;
  if (q2.is_one())
    throw Error(ErrorCode::degenerate_anisotropy, "q^2 = 1 (eta = 0) is a degenerate anisotropy point");
  DensePoly d({GaussRat(-1), 0, 0, 0, q2});
  DensePoly bnum({0, 0, q2 - GaussRat(1)});
  DensePoly cnum({-q, 0, 0, 0, q});
  return {RationalFn(bnum, d), RationalFn(cnum, d), d};
}

GateValues gate_values(const mp::Complex& q, const mp::Complex& x) {
  mp::Complex x2 = x * x, x4 = x2 * x2, q2 = q * q;
  mp::Complex one(mp::Real(1));
  mp::Complex d = q2 * x4 - one;
  mp::Real scale = abs(q2 * x4) + 1;
  if (abs(d) <= scale * mp::Real("1e-40"))
    throw Error(ErrorCode::pole, "pole: q^2 x^4 - 1 vanishes at x = " + mp::to_string(x));
  return {(q2 - one) * x2 / d, q * (x4 - one) / d};
}

Mat4 physical_gate(double alpha, double phi) {
  using C = std::complex<double>;
  const C i(0, 1);
  const C e = std::exp(-i * phi);
  Mat4 u{};
  u[0] = 1;
  u[5] = e * std::cos(alpha);
  u[6] = i * e * std::sin(alpha);
  u[9] = i * e * std::sin(alpha);
  u[10] = e * std::cos(alpha);
  u[15] = 1;
  return u;
}

Mat4 gauge_transformed_gate(double alpha, double phi) {
  using C = std::complex<double>;
  const C i(0, 1);
  Mat4 u = physical_gate(alpha, phi);
  // sz = +1 on |0>, -1 on |1>
  const int sz_sum[4] = {2, 0, 0, -2};
  for (int r = 0; r < 4; ++r) {
    C f = std::exp(i * phi) * std::exp(-i * phi * static_cast<double>(sz_sum[r]) / 2.0);
    for (int c = 0; c < 4; ++c) u[r * 4 + c] *= f;
  }
  return u;
}

PhysicalAngles physical_angles(const mp::Complex& q, const mp::Complex& x) {
  GateValues g = gate_values(q, x);
  const mp::Complex i(mp::Real(0), mp::Real(1));
  mp::Complex w = g.b * g.b - g.c * g.c;  // e^{-2 i phi}
  mp::Complex phi = i * log(w) / mp::Real(2);
  mp::Complex eiphi = exp(i * phi);
  mp::Complex alpha = -i * log((g.b + g.c) * eiphi);
  mp::Real defect = std::max(abs(alpha.imag()), abs(phi.imag()));
  return {alpha, phi, defect};
}

SectorBasis::SectorBasis(int L, int M) : L_(L), M_(M) {
  if (L <= 0 || L % 2 != 0 || L > 62)
    throw Error(ErrorCode::invalid_argument, "L must be even, positive and at most 62");
  if (M < 0 || M > L) throw Error(ErrorCode::invalid_argument, "M must satisfy 0 <= M <= L");
  if (M == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack enumerates M-bit patterns in ascending order.
  std::uint64_t s = (std::uint64_t{1} << M) - 1;
  const std::uint64_t limit = std::uint64_t{1} << L;
  while (s < limit) {
    states_.push_back(s);
    std::uint64_t c = s & (~s + 1);
    std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::index(std::uint64_t bits) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), bits);
  if (it == states_.end() || *it != bits) return npos;
  return static_cast<std::size_t>(it - states_.begin());
}

std::string SectorBasis::label(std::size_t idx) const {
  std::string s(static_cast<std::size_t>(L_), '0');
  for (int site = 1; site <= L_; ++site)
    if ((states_[idx] >> site_bit(L_, site)) & 1) s[static_cast<std::size_t>(site - 1)] = '1';
  return s;
}

std::uint64_t SectorBasis::parse_label(const std::string& label) {
  std::uint64_t bits = 0;
  for (char ch : label) {
    if (ch != '0' && ch != '1') throw Error(ErrorCode::parse_error, "basis label must be a 0/1 string");
    bits = (bits << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return bits;
}

SectorBasis sector_basis(int L, int M) { return SectorBasis(L, M); }

std::vector<std::pair<int, int>> floquet_gate_order(int L) {
  std::vector<std::pair<int, int>> order;
  for (int j = 1; j < L; j += 2) order.emplace_back(j, j + 1);
  for (int j = 2; j <= L; j += 2) order.emplace_back(j, j % L + 1);
  return order;
}

namespace detail {

std::vector<GateAction> floquet_plan(const SectorBasis& basis) {
  std::vector<GateAction> plan;
  const int L = basis.L();
  for (auto [i, j] : floquet_gate_order(L)) {
    GateAction g;
    g.site_i = i;
    g.site_j = j;
    const std::uint64_t mi = std::uint64_t{1} << SectorBasis::site_bit(L, i);
    const std::uint64_t mj = std::uint64_t{1} << SectorBasis::site_bit(L, j);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      std::uint64_t s = basis.state(a);
      bool bi = s & mi, bj = s & mj;
      if (bi == bj) {
        g.diagonal.push_back(a);
        continue;
      }
      std::size_t p = basis.index(s ^ (mi | mj));
      if (a < p) g.mixed.emplace_back(a, p);
    }
    plan.push_back(std::move(g));
  }
  return plan;
}

}  // namespace detail

void apply_floquet_numeric(mp::CVector& v, const SectorBasis& basis, const GateValues& g) {
  static thread_local int cached_L = -1, cached_M = -1;
  static thread_local std::vector<detail::GateAction> plan;
  if (cached_L != basis.L() || cached_M != basis.M()) {
    plan = detail::floquet_plan(basis);
    cached_L = basis.L();
    cached_M = basis.M();
  }
  if (v.size() != basis.size()) throw Error(ErrorCode::sector_mismatch, "vector size does not match sector");
  for (const auto& gate : plan)
    for (auto [a, p] : gate.mixed) {
      mp::Complex va = v[a], vp = v[p];
      v[a] = g.b * va + g.c * vp;
      v[p] = g.b * vp + g.c * va;
    }
}

mp::CMatrix floquet_matrix_numeric(const CircuitParams& params, const mp::Complex& x0, int L, int M) {
  SectorBasis basis(L, M);
  GateValues g = gate_values(params.q_numeric(), mp::promote(x0));
  mp::CMatrix u(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    mp::CVector e(basis.size());
    e[col] = mp::Complex(mp::Real(1));
    apply_floquet_numeric(e, basis, g);
    for (std::size_t row = 0; row < basis.size(); ++row) u(row, col) = e[row];
  }
  return u;
}

}  // namespace gply
