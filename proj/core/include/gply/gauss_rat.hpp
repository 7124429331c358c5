#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gply {

// Exact complex rational a + b i. Parts are canonical mpq values.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im = 0);

  static GaussRat i() { return GaussRat(0, 1); }

  /// Accepts "3/5+4/5i", "3/5+4i/5", "-i", "2", "0.25-1.5i".
  static GaussRat parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  GaussRat operator-() const { return GaussRat(-re_, -im_); }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  GaussRat pow(long e) const;

  std::string to_string() const;
  std::string re_string() const { return re_.get_str(); }
  std::string im_string() const { return im_.get_str(); }

  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

mpq_class parse_rational(std::string_view text);

}  // namespace gply
