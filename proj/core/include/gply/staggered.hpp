#pragma once

#include <string>
#include <vector>

#include "gply/amplitude.hpp"
#include "gply/bethe.hpp"
#include "gply/mp.hpp"

namespace gply {

/// Inhomogeneities theta_1, theta_2 with a = e^theta_1, b = e^theta_2, q = e^eta.
/// arrangement[j] in {1, 2} names the inhomogeneity carried by site j + 1.
struct StaggeredParams {
  mp::Complex theta1;
  mp::Complex theta2;
  mp::Complex q;
  std::vector<int> arrangement;

  int L() const { return static_cast<int>(arrangement.size()); }
  mp::Complex eta() const;
  mp::Complex theta21() const { return theta2 - theta1; }

  static StaggeredParams from_ab(const mp::Complex& a, const mp::Complex& b, const mp::Complex& q,
                                 std::vector<int> arrangement);
  /// theta_2 = xi/2, theta_1 = -xi/2 with x = e^(xi/2), alternating arrangement.
  static StaggeredParams brickwork(const mp::Complex& q, const mp::Complex& x, int L);
};

/// {1,1,2,2,...}
std::vector<int> paired_arrangement(int L);
/// {1,2,1,2,...}
std::vector<int> alternating_arrangement(int L);

/// Corners 1, middle block sinh(eta)/sinh(eta+t) on the diagonal and sinh(t)/sinh(eta+t) off it.
mp::CMatrix staggered_gate(const mp::Complex& theta21, const mp::Complex& eta);

/// Tr_a[R_La(u - nu_L) ... R_1a(u - nu_1)] restricted to sector M.
mp::CMatrix transfer_matrix(const StaggeredParams& params, const mp::Complex& u, int M);

/// T(theta_2) T(theta_1)^{-1} in sector M; throws singular_matrix with the condition number.
mp::CMatrix staggered_floquet(const StaggeredParams& params, int M);

/// <Psi| U^n |Psi> for the staggered Floquet operator.
mp::Complex staggered_loschmidt(const InitialState& state, const StaggeredParams& params, unsigned n);

/// prod_k sinh(u_k - theta_2 + eta) sinh(u_k - theta_1) / (sinh(u_k - theta_1 + eta) sinh(u_k - theta_2))
mp::Complex staggered_eigenvalue(const BetheRoots& roots, const mp::Complex& theta1, const mp::Complex& theta2,
                                 const mp::Complex& eta);

/// M=1 roots of the staggered Bethe equations, from the brickwork solutions at xi = theta_21
/// shifted by (theta_1 + theta_2)/2.
BetheSolveReport staggered_bae_m1(const StaggeredParams& params);

struct UnitarityCheck {
  double imaginary_defect = 0;  // |Re| of (b/a - a/b)/(q - 1/q), relative
  double norm_defect = 0;       // | |B|^2 + |C|^2 - 1 |
  bool holds(double tol) const { return imaginary_defect <= tol && norm_defect <= tol; }
};

/// Evaluates both local-unitarity conditions at (a, b).
UnitarityCheck unitarity_conditions(const mp::Complex& a, const mp::Complex& b, const mp::Complex& q);

struct UnitarityLocus {
  enum class Kind { circle, line } kind = Kind::circle;
  Regime regime = Regime::massive;
  mp::Complex b;
  std::string description;

  /// Distance of a from the locus: ||a| - |b|| or the distance to the line through 0 and b.
  mp::Real distance(const mp::Complex& a) const;
  UnitarityCheck check(const mp::Complex& a, const mp::Complex& q) const { return unitarity_conditions(a, b, q); }
};

/// Massive: |a| = |b|; massless: a in b R. Throws unsupported_regime at sin(2 gamma) = 0.
UnitarityLocus staggered_unitarity_locus(const mp::Complex& q, const mp::Complex& b);

}  // namespace gply
