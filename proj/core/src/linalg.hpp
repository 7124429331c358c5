#pragma once

#include <vector>

#include "gply/mp.hpp"

namespace gply::detail {

struct EigenSystem {
  std::vector<mp::Complex> values;
  mp::CMatrix right;  // columns r_j
  mp::CMatrix left;   // rows l_j with l_j r_k = delta_jk
  double worst_condition = 0;  // max_j |l_j| |r_j|
};

/// Throws defective_matrix when the eigenvector matrix is numerically singular.
EigenSystem eigen_system(const mp::CMatrix& a);

std::vector<mp::Complex> eigenvalues(const mp::CMatrix& a);

/// Solves a x = b by partial-pivot elimination; throws singular_matrix.
mp::CVector solve_linear(mp::CMatrix a, mp::CVector b);

}  // namespace gply::detail

namespace gply::detail {

/// Inverse via full-pivot LU; throws singular_matrix reporting the 1-norm condition estimate.
mp::CMatrix inverse(const mp::CMatrix& a, double* condition = nullptr);

}  // namespace gply::detail
