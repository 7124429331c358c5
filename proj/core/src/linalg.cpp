#include "linalg.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "gply/error.hpp"

namespace gply::detail {

using mp::Complex;
using mp::Real;
using EMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

namespace {

EMatrix to_eigen(const mp::CMatrix& a) {
  EMatrix m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = mp::promote(a(i, j));
  return m;
}

mp::CMatrix from_eigen(const EMatrix& m) {
  mp::CMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

void require_square(const mp::CMatrix& a) {
  if (a.rows != a.cols || a.rows == 0) throw Error(ErrorCode::invalid_argument, "square nonempty matrix required");
}

}  // namespace

std::vector<Complex> eigenvalues(const mp::CMatrix& a) {
  require_square(a);
  Eigen::ComplexEigenSolver<EMatrix> es(to_eigen(a), false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "eigenvalue iteration did not converge");
  const auto& d = es.eigenvalues();
  return std::vector<Complex>(d.data(), d.data() + d.size());
}

EigenSystem eigen_system(const mp::CMatrix& a) {
  require_square(a);
  const std::size_t n = a.rows;
  Eigen::ComplexEigenSolver<EMatrix> es(to_eigen(a), true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "eigenvalue iteration did not converge");
  EMatrix v = es.eigenvectors();
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) /= Complex(v.col(j).norm());

  Eigen::FullPivLU<EMatrix> lu(v);
  const Real tiny = pow(Real(10), -Real(static_cast<double>(mp::current_digits())) / 2);
  if (!lu.isInvertible() || abs(lu.determinant()) <= tiny)
    throw Error(ErrorCode::defective_matrix, "eigenvector matrix is singular; the matrix looks defective");
  EMatrix w = lu.inverse();

  EigenSystem out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  Real worst = 0;
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, Real(w.row(j).norm()));
  out.worst_condition = static_cast<double>(worst);
  if (worst >= 1 / tiny)
    throw Error(ErrorCode::defective_matrix,
                "eigenvalue condition number " + mp::to_string(worst, 6) + " exceeds 10^(digits/2)");
  out.right = from_eigen(v);
  out.left = from_eigen(w);
  return out;
}

mp::CMatrix inverse(const mp::CMatrix& a, double* condition) {
  require_square(a);
  EMatrix m = to_eigen(a);
  Eigen::FullPivLU<EMatrix> lu(m);
  auto norm1 = [](const EMatrix& x) {
    Real best = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Real s = 0;
      for (Eigen::Index i = 0; i < x.rows(); ++i) s += abs(x(i, j));
      best = std::max(best, s);
    }
    return best;
  };
  const Real tiny = pow(Real(10), -Real(static_cast<double>(mp::current_digits())) / 2);
  if (!lu.isInvertible()) throw Error(ErrorCode::singular_matrix, "matrix is singular (condition number infinite)");
  EMatrix inv = lu.inverse();
  Real cond = norm1(m) * norm1(inv);
  if (condition) *condition = static_cast<double>(cond);
  if (cond * tiny >= 1)
    throw Error(ErrorCode::singular_matrix, "matrix is numerically singular, condition number " + mp::to_string(cond, 6));
  return from_eigen(inv);
}

mp::CVector solve_linear(mp::CMatrix a, mp::CVector b) {
  require_square(a);
  const std::size_t n = a.rows;
  if (b.size() != n) throw Error(ErrorCode::invalid_argument, "dimension mismatch in solve_linear");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a(r, col)) > abs(a(piv, col))) piv = r;
    if (a(piv, col) == Complex()) throw Error(ErrorCode::singular_matrix, "singular linear system");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      Complex f = a(r, col) / a(col, col);
      if (f == Complex()) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  mp::CVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace gply::detail
