#include "gply/mp.hpp"

#include <cstdlib>
#include <sstream>

namespace gply::mp {

unsigned default_digits() {
  if (const char* env = std::getenv("GPLY_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 16 && v <= 100000) return static_cast<unsigned>(v);
  }
  return 128;
}

unsigned current_digits() { return Real::default_precision(); }

ScopedPrecision::ScopedPrecision(unsigned digits) : saved_(Real::default_precision()) {
  if (saved_ != digits) Real::default_precision(digits);
}

ScopedPrecision::~ScopedPrecision() {
  if (Real::default_precision() != saved_) Real::default_precision(saved_);
}

Real promote(const Real& v) {
  Real r;
  mpfr_set(r.backend().data(), v.backend().data(), MPFR_RNDN);
  return r;
}

Complex promote(const Complex& z) { return {promote(z.real()), promote(z.imag())}; }

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Complex to_complex(const GaussRat& z) { return {to_real(z.re()), to_real(z.im())}; }

Complex make_complex(double re, double im) { return {Real(re), Real(im)}; }

Real pi() { return boost::math::constants::pi<Real>(); }

Real epsilon() { return std::numeric_limits<Real>::epsilon(); }

mpq_class rationalize(const Real& value, const mpz_class& max_den) {
  // continued fraction convergents
  mpq_class exact;
  mpfr_get_q(exact.get_mpq_t(), value.backend().data());
  if (exact.get_den() <= max_den) return exact;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class x = exact;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpq_class frac = x - mpq_class(a);
    if (sgn(frac) == 0) break;
    x = 1 / frac;
  }
  mpq_class r(p1, q1);
  r.canonicalize();
  return r;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(Real(1), Real(0));
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex& aik = a(i, k);
      if (aik.real() == 0 && aik.imag() == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CVector operator*(const CMatrix& a, const CVector& v) {
  CVector r(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) r[i] += a(i, k) * v[k];
  return r;
}

std::string to_string(const Real& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::string to_string(const Complex& z, int digits) {
  std::string re = to_string(z.real(), digits), im = to_string(z.imag(), digits);
  if (!im.empty() && im[0] == '-') return re + im + "i";
  return re + "+" + im + "i";
}

}  // namespace gply::mp
