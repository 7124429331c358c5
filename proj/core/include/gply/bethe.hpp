#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gply/amplitude.hpp"
#include "gply/circuit.hpp"
#include "gply/mp.hpp"

namespace gply {

/// Rapidities u_j with q = e^eta and x = e^(xi/2).
struct BetheRoots {
  std::vector<mp::Complex> u;
  int L = 0;
  mp::Complex q;
  mp::Complex x;
  std::vector<mp::Complex> residuals;
  bool singular = false;  // two roots closer than 1e-8

  int M() const { return static_cast<int>(u.size()); }
};

/// LHS_j - RHS_j of the Bethe equations; entries are infinite at a pole.
std::vector<mp::Complex> bae_residual(const BetheRoots& roots);

/// prod_k sinh(u_k - xi/2 + eta) sinh(u_k + xi/2) / (sinh(u_k + xi/2 + eta) sinh(u_k - xi/2))
mp::Complex floquet_eigenvalue_bethe(const BetheRoots& roots);

/// Same product written directly with complex sinh; used as a cross-check.
mp::Complex floquet_eigenvalue_sinh(const BetheRoots& roots);

struct BetheSolveReport {
  std::vector<BetheRoots> solutions;
  std::vector<std::string> rejected;  // filtered candidates and failed seeds
};

BetheSolveReport solve_bae_m1(const CircuitParams& params, const mp::Complex& x);

struct M2Options {
  /// Pairs of rapidities; empty selects perturbed pairs of M=1 solutions.
  std::vector<std::pair<mp::Complex, mp::Complex>> seeds;
  unsigned max_iterations = 100;
};

BetheSolveReport solve_bae_m2(const CircuitParams& params, const mp::Complex& x, const M2Options& opts = {});

/// Eigenvalues of a dense matrix at the current precision.
std::vector<mp::Complex> matrix_eigenvalues(const mp::CMatrix& a);

/// Eigenvalues of the numeric sector matrix.
std::vector<mp::Complex> sector_spectrum(const CircuitParams& params, const mp::Complex& x, int M);

/// Smallest distance from tau to the list.
mp::Real spectrum_distance(const mp::Complex& tau, const std::vector<mp::Complex>& spectrum);

struct SpectralTerm {
  mp::Complex lambda;
  mp::Complex weight;
  int M = 0;
};

struct SpectralDecomposition {
  std::vector<SpectralTerm> terms;
  CircuitParams params;
  mp::Complex x0;
  std::string state;
  Projection projection = Projection::none;
  double worst_condition = 0;

  mp::Complex weight_sum() const;
  /// sum_j w_j lambda_j^n
  mp::Complex evaluate(unsigned n) const;
};

/// w_j = <bra|r_j><l_j|Psi> per sector, with the bra as in loschmidt_numeric.
SpectralDecomposition spectral_decomposition(const InitialState& state, const CircuitParams& params,
                                             const mp::Complex& x0, Projection projection = Projection::none);

}  // namespace gply
