#include "gply/gauss_rat.hpp"

#include <cctype>

#include "gply/error.hpp"

namespace gply {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::zero_denominator: return "zero_denominator";
    case ErrorCode::zero_polynomial: return "zero_polynomial";
    case ErrorCode::degenerate_anisotropy: return "degenerate_anisotropy";
    case ErrorCode::pole: return "pole";
    case ErrorCode::sector_mismatch: return "sector_mismatch";
    case ErrorCode::wrong_mode: return "wrong_mode";
    case ErrorCode::identically_zero: return "identically_zero";
    case ErrorCode::unsupported_regime: return "unsupported_regime";
    case ErrorCode::defective_matrix: return "defective_matrix";
    case ErrorCode::singular_matrix: return "singular_matrix";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

GaussRat::GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw Error(ErrorCode::zero_denominator, "inverse of zero Gaussian rational");
  mpq_class n = norm();
  return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw Error(ErrorCode::zero_denominator, "division by zero Gaussian rational");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussRat GaussRat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  GaussRat result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string GaussRat::to_string() const {
  if (is_real()) return re_.get_str();
  std::string im;
  if (im_ == 1) im = "i";
  else if (im_ == -1) im = "-i";
  else im = im_.get_str() + "i";
  if (sgn(re_) == 0) return im;
  std::string out = re_.get_str();
  if (sgn(im_) > 0) out += "+";
  return out + im;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::parse_error, "cannot parse rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  std::size_t dot = s.find('.');
  auto all_digits = [](std::string_view v, bool allow_sign) {
    if (allow_sign && !v.empty() && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num, true) || !all_digits(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den);
    if (d == 0) throw Error(ErrorCode::zero_denominator, "zero denominator in '" + s + "'");
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return q;
  }
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!all_digits(ip, false) || !all_digits(fp, false)) throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpq_class q(mpz_class(ip) * scale + mpz_class(fp), scale);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }
  if (!all_digits(s, true)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  return mpq_class(mpz_class(s));
}

GaussRat GaussRat::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty Gaussian rational");

  GaussRat total;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;

    bool neg = false;
    if (term[0] == '+' || term[0] == '-') {
      neg = term[0] == '-';
      term.erase(0, 1);
    }
    bool imag = false;
    std::size_t ipos = term.find('i');
    if (ipos != std::string::npos) {
      imag = true;
      term.erase(ipos, 1);
      if (term.find('i') != std::string::npos)
        throw Error(ErrorCode::parse_error, "repeated 'i' in '" + std::string(text) + "'");
      if (!term.empty() && term[0] == '*') term.erase(0, 1);
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term[0] == '/') term.insert(0, "1");
    }
    if (term.empty()) throw Error(ErrorCode::parse_error, "cannot parse '" + std::string(text) + "'");
    mpq_class v = parse_rational(term);
    if (neg) v = -v;
    total += imag ? GaussRat(0, v) : GaussRat(v);
  }
  return total;
}

}  // namespace gply
