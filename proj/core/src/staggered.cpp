#include "gply/staggered.hpp"

#include <cmath>

#include "gply/error.hpp"
#include "linalg.hpp"

namespace gply {

using mp::Complex;
using mp::Real;

namespace {

Complex one() { return Complex(Real(1)); }

void check_arrangement(const std::vector<int>& arr) {
  if (arr.size() < 2 || arr.size() > 20 || arr.size() % 2 != 0)
    throw Error(ErrorCode::invalid_argument, "arrangement length must be even, between 2 and 20");
  for (int v : arr)
    if (v != 1 && v != 2) throw Error(ErrorCode::invalid_argument, "arrangement entries must be 1 or 2");
}

bool tiny(const Complex& z) { return abs(z) <= 1000 * mp::epsilon(); }

}  // namespace

Complex StaggeredParams::eta() const { return log(mp::promote(q)); }

StaggeredParams StaggeredParams::from_ab(const Complex& a, const Complex& b, const Complex& q,
                                         std::vector<int> arrangement) {
  if (a == Complex() || b == Complex() || q == Complex())
    throw Error(ErrorCode::invalid_argument, "a, b and q must be nonzero");
  StaggeredParams p;
  p.theta1 = log(mp::promote(a));
  p.theta2 = log(mp::promote(b));
  p.q = mp::promote(q);
  p.arrangement = std::move(arrangement);
  check_arrangement(p.arrangement);
  return p;
}

StaggeredParams StaggeredParams::brickwork(const Complex& q, const Complex& x, int L) {
  StaggeredParams p;
  Complex half_xi = log(mp::promote(x));
  p.theta2 = half_xi;
  p.theta1 = -half_xi;
  p.q = mp::promote(q);
  p.arrangement = alternating_arrangement(L);
  return p;
}

std::vector<int> paired_arrangement(int L) {
  std::vector<int> a(L);
  for (int j = 0; j < L; ++j) a[j] = (j / 2) % 2 == 0 ? 1 : 2;
  check_arrangement(a);
  return a;
}

std::vector<int> alternating_arrangement(int L) {
  std::vector<int> a(L);
  for (int j = 0; j < L; ++j) a[j] = j % 2 == 0 ? 1 : 2;
  check_arrangement(a);
  return a;
}

mp::CMatrix staggered_gate(const Complex& theta21, const Complex& eta) {
  Complex den = sinh(mp::promote(eta) + mp::promote(theta21));
  if (tiny(den)) throw Error(ErrorCode::pole, "sinh(eta + theta21) = 0");
  Complex b = sinh(mp::promote(eta)) / den, c = sinh(mp::promote(theta21)) / den;
  mp::CMatrix g(4, 4);
  g(0, 0) = one();
  g(1, 1) = b;
  g(1, 2) = c;
  g(2, 1) = c;
  g(2, 2) = b;
  g(3, 3) = one();
  return g;
}

mp::CMatrix transfer_matrix(const StaggeredParams& params, const Complex& u, int M) {
  check_arrangement(params.arrangement);
  const int L = params.L();
  if (M < 0 || M > L) throw Error(ErrorCode::invalid_argument, "magnon number out of range");
  SectorBasis basis(L, M);
  const Complex eta = params.eta();
  // R(v) = P Rcheck(v): |s a> -> |s a> for s = a, else c |s a> + b |a s>
  std::vector<Complex> bs(L), cs(L);
  for (int j = 0; j < L; ++j) {
    Complex v = mp::promote(u) - (params.arrangement[j] == 1 ? params.theta1 : params.theta2);
    Complex den = sinh(v + eta);
    if (tiny(den)) throw Error(ErrorCode::pole, "sinh(u - nu_j + eta) = 0 in the transfer matrix");
    bs[j] = sinh(eta) / den;
    cs[j] = sinh(v) / den;
  }
  const std::size_t dim = std::size_t(1) << (L + 1);
  mp::CMatrix T(basis.size(), basis.size());
  std::vector<Complex> cur(dim), next(dim);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (int alpha = 0; alpha < 2; ++alpha) {
      std::fill(cur.begin(), cur.end(), Complex());
      cur[(basis.state(col) << 1) | std::uint64_t(alpha)] = one();
      for (int j = 0; j < L; ++j) {
        std::fill(next.begin(), next.end(), Complex());
        const int bit = SectorBasis::site_bit(L, j + 1) + 1;
        for (std::size_t k = 0; k < dim; ++k) {
          if (cur[k] == Complex()) continue;
          int s = int((k >> bit) & 1u), a = int(k & 1u);
          if (s == a) {
            next[k] += cur[k];
          } else {
            std::size_t swapped = k ^ ((std::size_t(1) << bit) | 1u);
            next[k] += cs[j] * cur[k];
            next[swapped] += bs[j] * cur[k];
          }
        }
        std::swap(cur, next);
      }
      for (std::size_t k = 0; k < dim; ++k) {
        if (cur[k] == Complex() || int(k & 1u) != alpha) continue;
        std::size_t row = basis.index(k >> 1);
        if (row != SectorBasis::npos) T(row, col) += cur[k];
      }
    }
  }
  return T;
}

mp::CMatrix staggered_floquet(const StaggeredParams& params, int M) {
  mp::CMatrix t2 = transfer_matrix(params, params.theta2, M);
  mp::CMatrix t1 = transfer_matrix(params, params.theta1, M);
  return t2 * detail::inverse(t1);
}

Complex staggered_loschmidt(const InitialState& state, const StaggeredParams& params, unsigned n) {
  if (state.L != params.L()) throw Error(ErrorCode::sector_mismatch, "state and arrangement disagree on L");
  Complex total;
  for (const auto& [m, ket] : state.sectors) {
    mp::CMatrix U = staggered_floquet(params, m);
    mp::CVector v(ket.size());
    for (std::size_t a = 0; a < ket.size(); ++a) v[a] = Complex(Real(ket[a]));
    for (unsigned s = 0; s < n; ++s) v = U * v;
    for (std::size_t a = 0; a < ket.size(); ++a)
      if (ket[a] != 0) total += Real(ket[a]) * v[a];
  }
  return total;
}

Complex staggered_eigenvalue(const BetheRoots& roots, const Complex& theta1, const Complex& theta2,
                             const Complex& eta) {
  Complex lam = one();
  for (const auto& u0 : roots.u) {
    Complex u = mp::promote(u0);
    Complex den = sinh(u - theta1 + eta) * sinh(u - theta2);
    if (tiny(den)) throw Error(ErrorCode::pole, "Bethe root sits on a pole of the staggered eigenvalue");
    lam *= sinh(u - theta2 + eta) * sinh(u - theta1) / den;
  }
  return lam;
}

BetheSolveReport staggered_bae_m1(const StaggeredParams& params) {
  check_arrangement(params.arrangement);
  Complex x = exp(params.theta21() / Real(2));
  BetheSolveReport rep = solve_bae_m1(CircuitParams::floating(params.q, params.L(), 1), x);
  Complex shift = (params.theta1 + params.theta2) / Real(2);
  for (auto& s : rep.solutions)
    for (auto& u : s.u) u += shift;
  return rep;
}

UnitarityCheck unitarity_conditions(const Complex& a0, const Complex& b0, const Complex& q0) {
  Complex a = mp::promote(a0), b = mp::promote(b0), q = mp::promote(q0);
  if (a == Complex() || b == Complex()) throw Error(ErrorCode::invalid_argument, "a and b must be nonzero");
  Complex w = b / a;
  Complex den = q * w - one() / (q * w);
  Complex dq = q - one() / q;
  if (tiny(dq)) throw Error(ErrorCode::degenerate_anisotropy, "q - 1/q = 0");
  Complex ratio = (w - one() / w) / dq;
  UnitarityCheck chk;
  chk.imaginary_defect = static_cast<double>(abs(ratio.real()) / std::max(Real(1), abs(ratio)));
  if (tiny(den)) {
    // gate pole: no unitary gate here
    chk.norm_defect = HUGE_VAL;
    return chk;
  }
  Complex B = dq / den, C = (w - one() / w) / den;
  chk.norm_defect = static_cast<double>(abs(norm(B) + norm(C) - Real(1)));
  return chk;
}

Real UnitarityLocus::distance(const Complex& a) const {
  if (kind == Kind::circle) return abs(abs(a) - abs(b));
  Complex p = a * conj(b);
  return abs(p.imag()) / abs(b);
}

UnitarityLocus staggered_unitarity_locus(const Complex& q0, const Complex& b) {
  Complex q = mp::promote(q0);
  if (b == Complex()) throw Error(ErrorCode::invalid_argument, "b must be nonzero");
  UnitarityLocus loc;
  loc.b = mp::promote(b);
  Regime r = classify_regime(q);
  if (r == Regime::massive) {
    loc.kind = UnitarityLocus::Kind::circle;
    loc.regime = r;
    loc.description = "|a| = |b|";
  } else if (r == Regime::massless) {
    Real s2 = abs(sin(2 * arg(q)));
    if (s2 <= Real(1e-20)) throw Error(ErrorCode::unsupported_regime, "sin(2 gamma) = 0 is excluded");
    loc.kind = UnitarityLocus::Kind::line;
    loc.regime = r;
    loc.description = "a in b R";
  } else {
    throw Error(ErrorCode::unsupported_regime, "unitarity loci need real q or unimodular q");
  }
  return loc;
}

}  // namespace gply
