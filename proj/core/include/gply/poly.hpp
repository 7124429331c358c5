#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gply/gauss_rat.hpp"

namespace gply {

// Dense univariate polynomial over GaussRat, coefficients in ascending degree.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<GaussRat> coeffs);
  DensePoly(std::initializer_list<GaussRat> coeffs) : DensePoly(std::vector<GaussRat>(coeffs)) {}

  static DensePoly constant(const GaussRat& c) { return DensePoly({c}); }
  static DensePoly monomial(const GaussRat& c, std::size_t k);
  static DensePoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<GaussRat>& coeffs() const { return c_; }
  const GaussRat& operator[](std::size_t k) const;
  const GaussRat& lead() const;

  GaussRat eval(const GaussRat& x) const;
  DensePoly derivative() const;
  DensePoly monic() const;
  DensePoly scaled(const GaussRat& s) const;

  /// p(x) -> p(x^k)
  DensePoly expand_power(unsigned k) const;
  /// gcd of the exponents carrying nonzero coefficients (0 for constants).
  unsigned exponent_stride() const;
  /// Inverse of expand_power; requires exponent_stride() % k == 0.
  DensePoly compress_power(unsigned k) const;
  /// Lowest exponent with a nonzero coefficient.
  std::size_t valuation() const;
  bool has_real_coeffs() const;

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator-(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
  DensePoly operator-() const;
  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

  static std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b);
  /// Throws unless b divides a exactly.
  DensePoly exact_div(const DensePoly& b) const;
  DensePoly pow(unsigned e) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<GaussRat> c_;
};

enum class PolyOp { add, sub, mul };
DensePoly poly_arith(const DensePoly& p, const DensePoly& q, PolyOp op);

/// Monic gcd over Q(i); gcd(0, 0) = 0.
DensePoly poly_gcd(const DensePoly& a, const DensePoly& b);

/// Z[i] coefficients with integer content 1 and leading coefficient in the right half plane.
DensePoly primitive_part(const DensePoly& p);

/// Scalar s with p = s * primitive_part(p).
GaussRat content_ratio(const DensePoly& p);

class RationalFn {
 public:
  RationalFn() : num_(), den_(DensePoly::constant(1)) {}
  RationalFn(DensePoly num, DensePoly den);

  const DensePoly& num() const { return num_; }
  const DensePoly& den() const { return den_; }

  GaussRat eval(const GaussRat& x) const;

 private:
  DensePoly num_;
  DensePoly den_;
};

/// Coprime numerator and monic denominator.
RationalFn poly_gcd_reduce(const RationalFn& f);

struct SquarefreeFactor {
  DensePoly factor;
  unsigned multiplicity;
};

struct SquarefreeOptions {
  bool modular_certificate = true;
};

/// Pairwise coprime square-free factors with primitive Z[i] coefficients, sorted by multiplicity.
/// The product of factor^multiplicity equals p up to a constant.
std::vector<SquarefreeFactor> squarefree_decompose(const DensePoly& p, SquarefreeOptions opts = {});

/// JSON array of ["re","im"] strings, degree ascending.
std::string poly_to_json(const DensePoly& p);
DensePoly poly_from_json(const std::string& text);

}  // namespace gply
