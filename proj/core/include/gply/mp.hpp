#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <string>
#include <vector>

#include "gply/gauss_rat.hpp"

namespace gply::mp {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;
using CVector = std::vector<Complex>;

/// Working precision in decimal digits; GPLY_PRECISION overrides the default of 128.
unsigned default_digits();

/// Sets the process-wide default precision for new values and restores it on exit.
/// The default is shared by all threads, so set it before spawning workers.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

unsigned current_digits();

/// Copies of Real keep the source precision; these re-round to the current default.
Real promote(const Real& v);
Complex promote(const Complex& z);

Real to_real(const mpq_class& q);
Complex to_complex(const GaussRat& z);
Complex make_complex(double re, double im);
Real pi();
Real epsilon();

/// Best rational approximation to |value| with denominator at most max_den.
mpq_class rationalize(const Real& value, const mpz_class& max_den);

struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;  // row-major

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static CMatrix identity(std::size_t n);

  Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);

std::string to_string(const Real& v, int digits = 20);
std::string to_string(const Complex& z, int digits = 20);

}  // namespace gply::mp
