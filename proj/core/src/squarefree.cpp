#include <algorithm>

#include "gply/error.hpp"
#include "gply/poly.hpp"
#include "zpoly.hpp"

namespace gply {

namespace {

bool modular_squarefree(const DensePoly& f) {
  detail::ZPoly z = detail::zp_from_gaussrat(f.coeffs());
  detail::ZPoly dz = detail::zp_derivative(z);
  for (const auto& mp : detail::mod_primes()) {
    auto a = detail::zp_reduce_mod(z, mp);
    if (static_cast<int>(a.size()) - 1 != f.degree()) continue;
    auto b = detail::zp_reduce_mod(dz, mp);
    if (detail::modp_gcd_degree(a, b, mp.p) == 0) return true;
  }
  return false;
}

std::vector<SquarefreeFactor> yun(const DensePoly& f) {
  std::vector<SquarefreeFactor> out;
  DensePoly fp = f.derivative();
  DensePoly g = poly_gcd(f, fp);
  DensePoly c = f.exact_div(g);
  DensePoly d = fp.exact_div(g) - c.derivative();
  for (unsigned i = 1; c.degree() > 0; ++i) {
    DensePoly a = poly_gcd(c, d);
    c = c.exact_div(a);
    d = d.exact_div(a) - c.derivative();
    if (a.degree() > 0) out.push_back({a, i});
  }
  return out;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decompose(const DensePoly& p, SquarefreeOptions opts) {
  if (p.is_zero()) throw Error(ErrorCode::zero_polynomial, "square-free decomposition of zero polynomial");
  std::vector<SquarefreeFactor> out;
  const std::size_t m = p.valuation();
  std::vector<GaussRat> shifted(p.coeffs().begin() + static_cast<std::ptrdiff_t>(m), p.coeffs().end());
  DensePoly r(std::move(shifted));
  unsigned k = std::max(1u, r.exponent_stride());
  DensePoly base = r.compress_power(k);

  if (base.degree() > 0) {
    std::vector<SquarefreeFactor> parts;
    if (opts.modular_certificate && modular_squarefree(base)) parts.push_back({base, 1});
    else parts = yun(base);
    for (auto& sf : parts) out.push_back({primitive_part(sf.factor.expand_power(k)), sf.multiplicity});
  }
  if (m > 0) out.push_back({DensePoly::x(), static_cast<unsigned>(m)});

  std::stable_sort(out.begin(), out.end(), [](const SquarefreeFactor& a, const SquarefreeFactor& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return a.factor.degree() < b.factor.degree();
  });
  return out;
}

}  // namespace gply
