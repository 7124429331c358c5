#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gply/gauss_rat.hpp"
#include "gply/mp.hpp"
#include "gply/poly.hpp"

namespace gply {

enum class Regime { massive, massless, other };
enum class Mode { exact, floating };

const char* regime_name(Regime r);

Regime classify_regime(const GaussRat& q);
Regime classify_regime(const mp::Complex& q);

struct CircuitParams {
  Mode mode = Mode::exact;
  GaussRat q{2};
  mp::Complex q_float;
  int L = 4;
  int M = 0;

  static CircuitParams exact(const GaussRat& q, int L, int M = 0);
  static CircuitParams floating(const mp::Complex& q, int L, int M = 0);

  Regime regime() const;
  /// (q + 1/q) / 2, evaluated at the current precision.
  mp::Complex delta() const;
  /// Exact anisotropy; throws in float mode.
  GaussRat delta_exact() const;
  /// q at the current precision.
  mp::Complex q_numeric() const;
  CircuitParams with_sector(int m) const;
};

// Gate entries in x after the substitution q = e^eta, x = e^(xi/2):
// b = (q^2-1) x^2 / d, c = q (x^4-1) / d, d = q^2 x^4 - 1.
struct GateEntries {
  RationalFn b;
  RationalFn c;
  DensePoly d;
};

GateEntries gate_entries(const GaussRat& q);

struct GateValues {
  mp::Complex b;
  mp::Complex c;
};

/// Numeric b(x0), c(x0); throws a pole error naming q^2 x^4 - 1.
GateValues gate_values(const mp::Complex& q, const mp::Complex& x);

using Mat4 = std::array<std::complex<double>, 16>;  // row-major, basis |00>,|01>,|10>,|11>

Mat4 physical_gate(double alpha, double phi);
/// e^{i phi} e^{-i phi (sz1 + sz2)/2} U(alpha, phi)
Mat4 gauge_transformed_gate(double alpha, double phi);

struct PhysicalAngles {
  mp::Complex alpha;
  mp::Complex phi;
  /// max(|Im alpha|, |Im phi|): zero on the unitarity locus.
  mp::Real imaginary_defect;
};

/// Solves b = e^{-i phi} cos(alpha), c = i e^{-i phi} sin(alpha).
PhysicalAngles physical_angles(const mp::Complex& q, const mp::Complex& x);

class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(int L, int M);

  int L() const { return L_; }
  int M() const { return M_; }
  std::size_t size() const { return states_.size(); }
  std::uint64_t state(std::size_t idx) const { return states_[idx]; }
  const std::vector<std::uint64_t>& states() const { return states_; }
  /// Index of a bit pattern, or npos.
  std::size_t index(std::uint64_t bits) const;
  /// Site 1 is the leftmost character and the most significant bit.
  std::string label(std::size_t idx) const;
  static std::uint64_t parse_label(const std::string& label);
  static int site_bit(int L, int site) { return L - site; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int L_ = 0;
  int M_ = 0;
  std::vector<std::uint64_t> states_;
};

SectorBasis sector_basis(int L, int M);

/// Gate site pairs in application order: (1,2),(3,4),...,(L-1,L) then (2,3),...,(L,1).
std::vector<std::pair<int, int>> floquet_gate_order(int L);

struct ExactSectorState {
  SectorBasis basis;
  std::vector<DensePoly> coeffs;
};

struct ExactEvolution {
  ExactSectorState state;
  /// state = d(x)^K U^n |input>
  unsigned K = 0;
};

ExactEvolution apply_floquet_exact(const ExactSectorState& state, const CircuitParams& params, unsigned n);

/// Dense sector matrix of U at x0 in sector_basis order, at the current precision.
mp::CMatrix floquet_matrix_numeric(const CircuitParams& params, const mp::Complex& x0, int L, int M);

/// In-place U |v> by gate-by-gate application, v indexed by sector_basis(L, M).
void apply_floquet_numeric(mp::CVector& v, const SectorBasis& basis, const GateValues& g);

}  // namespace gply
