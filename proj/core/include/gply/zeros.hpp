#pragma once

#include <string>
#include <vector>

#include "gply/mp.hpp"
#include "gply/poly.hpp"

namespace gply {

struct ZeroEntry {
  mp::Complex root;
  unsigned multiplicity = 1;
  mp::Real radius;    // certified inclusion radius (0 for exact roots)
  mp::Real residual;  // |P(root)| / sum_k |c_k| |root|^k
};

struct ZeroSet {
  std::vector<ZeroEntry> entries;  // sorted by (arg, modulus)
  int degree = 0;
  unsigned digits = 0;
  bool valid = false;
  std::string note;

  unsigned total_multiplicity() const;
};

struct ZeroOptions {
  unsigned digits = 0;  // 0: 64 up to degree 1000, 256 above
  unsigned max_iterations = 2000;
  bool modular_certificate = true;
};

ZeroSet find_zeros(const DensePoly& p, const ZeroOptions& opts = {});
inline ZeroSet find_zeros(const DensePoly& p, unsigned precision_digits) {
  ZeroOptions o;
  o.digits = precision_digits;
  return find_zeros(p, o);
}

struct CertificationReport {
  bool count_ok = false;
  bool separation_ok = false;
  bool reconstruction_ok = false;
  bool residual_ok = false;
  bool usable = false;
  double max_reconstruction_error = 0;
  std::string detail;
};

CertificationReport certify_zeros(const DensePoly& p, const ZeroSet& zs);

/// Aberth-Ehrlich simultaneous iteration at the current precision, coefficients ascending.
std::vector<mp::Complex> aberth_roots(const std::vector<mp::Complex>& coeffs, unsigned max_iterations,
                                      bool* converged);

}  // namespace gply
