#include <numeric>

#include "gply/error.hpp"
#include "gply/poly.hpp"
#include "zpoly.hpp"

namespace gply {

using detail::ZPoly;

namespace {

const GaussRat& zero_coeff() {
  static const GaussRat z;
  return z;
}

DensePoly from_zpoly(const ZPoly& p, const mpz_class& scale) {
  std::vector<GaussRat> c = detail::zp_to_gaussrat(p);
  if (scale != 1)
    for (auto& v : c) v = GaussRat(v.re() / scale, v.im() / scale);
  return DensePoly(std::move(c));
}

}  // namespace

DensePoly::DensePoly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

void DensePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DensePoly DensePoly::monomial(const GaussRat& c, std::size_t k) {
  std::vector<GaussRat> v(k + 1);
  v[k] = c;
  return DensePoly(std::move(v));
}

const GaussRat& DensePoly::operator[](std::size_t k) const { return k < c_.size() ? c_[k] : zero_coeff(); }

const GaussRat& DensePoly::lead() const {
  if (c_.empty()) throw Error(ErrorCode::zero_polynomial, "leading coefficient of zero polynomial");
  return c_.back();
}

GaussRat DensePoly::eval(const GaussRat& x) const {
  GaussRat acc;
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc *= x;
    acc += c_[k];
  }
  return acc;
}

DensePoly DensePoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussRat> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussRat(static_cast<long>(k));
  return DensePoly(std::move(d));
}

DensePoly DensePoly::monic() const {
  if (is_zero()) return {};
  return scaled(lead().inverse());
}

DensePoly DensePoly::scaled(const GaussRat& s) const {
  std::vector<GaussRat> v(c_);
  for (auto& c : v) c *= s;
  return DensePoly(std::move(v));
}

DensePoly DensePoly::expand_power(unsigned k) const {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "expand_power with k=0");
  if (c_.empty()) return {};
  std::vector<GaussRat> v((c_.size() - 1) * k + 1);
  for (std::size_t j = 0; j < c_.size(); ++j) v[j * k] = c_[j];
  return DensePoly(std::move(v));
}

unsigned DensePoly::exponent_stride() const {
  unsigned g = 0;
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) g = std::gcd(g, static_cast<unsigned>(k));
  return g;
}

DensePoly DensePoly::compress_power(unsigned k) const {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "compress_power with k=0");
  if (c_.empty()) return {};
  std::vector<GaussRat> v((c_.size() - 1) / k + 1);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    if (j % k) throw Error(ErrorCode::invalid_argument, "compress_power: exponent not divisible");
    v[j / k] = c_[j];
  }
  return DensePoly(std::move(v));
}

std::size_t DensePoly::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return k;
  return 0;
}

bool DensePoly::has_real_coeffs() const {
  for (const auto& c : c_)
    if (!c.is_real()) return false;
  return true;
}

DensePoly operator+(const DensePoly& a, const DensePoly& b) {
  std::vector<GaussRat> v(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
  return DensePoly(std::move(v));
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) {
  std::vector<GaussRat> v(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
  return DensePoly(std::move(v));
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  mpz_class la, lb;
  ZPoly za = detail::zp_from_gaussrat(a.coeffs(), &la);
  ZPoly zb = detail::zp_from_gaussrat(b.coeffs(), &lb);
  return from_zpoly(detail::zp_mul(za, zb), la * lb);
}

DensePoly DensePoly::operator-() const { return scaled(-1); }

std::pair<DensePoly, DensePoly> DensePoly::divmod(const DensePoly& a, const DensePoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::zero_denominator, "polynomial division by zero");
  if (a.degree() < b.degree()) return {DensePoly(), a};
  std::vector<GaussRat> r = a.coeffs();
  std::vector<GaussRat> q(a.size() - b.size() + 1);
  const GaussRat inv = b.lead().inverse();
  const std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    if (r[k + db].is_zero()) continue;
    q[k] = r[k + db] * inv;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= q[k] * b.coeffs()[j];
  }
  r.resize(db);
  return {DensePoly(std::move(q)), DensePoly(std::move(r))};
}

DensePoly DensePoly::exact_div(const DensePoly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) throw Error(ErrorCode::invalid_argument, "exact_div: nonzero remainder");
  return q;
}

DensePoly DensePoly::pow(unsigned e) const {
  DensePoly result = constant(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string DensePoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = c_[k].is_real() ? c_[k].to_string() : "(" + c_[k].to_string() + ")";
    if (k == 0) out += c;
    else {
      if (!c_[k].is_one()) out += c + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

DensePoly poly_arith(const DensePoly& p, const DensePoly& q, PolyOp op) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::sub: return p - q;
    case PolyOp::mul: return p * q;
  }
  return {};
}

DensePoly poly_gcd(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  ZPoly g = detail::zp_gcd(detail::zp_from_gaussrat(a.coeffs()), detail::zp_from_gaussrat(b.coeffs()));
  return from_zpoly(g, 1).monic();
}

DensePoly primitive_part(const DensePoly& p) {
  if (p.is_zero()) return {};
  ZPoly z = detail::zp_from_gaussrat(p.coeffs());
  detail::zp_make_primitive(z);
  auto& lc = z.back();
  // rotate by a unit so that re(lc) > 0, or re(lc) = 0 and im(lc) > 0
  detail::GaussInt unit;
  if (sgn(lc.re) > 0) unit.re = 1;
  else if (sgn(lc.re) < 0) unit.re = -1;
  else if (sgn(lc.im) > 0) unit.re = 1;
  else unit.re = -1;
  if (unit.re != 1) z = detail::zp_scale(z, unit);
  return from_zpoly(z, 1);
}

GaussRat content_ratio(const DensePoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::zero_polynomial, "content of zero polynomial");
  DensePoly pp = primitive_part(p);
  return p.lead() / pp.lead();
}

RationalFn::RationalFn(DensePoly num, DensePoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::zero_denominator, "rational function with zero denominator");
}

GaussRat RationalFn::eval(const GaussRat& x) const {
  GaussRat d = den_.eval(x);
  if (d.is_zero()) throw Error(ErrorCode::pole, "rational function evaluated at a pole " + x.to_string());
  return num_.eval(x) / d;
}

RationalFn poly_gcd_reduce(const RationalFn& f) {
  if (f.den().is_zero()) throw Error(ErrorCode::zero_denominator, "zero denominator");
  if (f.num().is_zero()) return RationalFn(DensePoly(), DensePoly::constant(1));
  DensePoly g = poly_gcd(f.num(), f.den());
  DensePoly num = f.num(), den = f.den();
  if (g.degree() > 0) {
    num = num.exact_div(g);
    den = den.exact_div(g);
  }
  GaussRat s = den.lead().inverse();
  return RationalFn(num.scaled(s), den.scaled(s));
}

}  // namespace gply
