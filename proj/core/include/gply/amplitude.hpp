#pragma once

#include <map>
#include <string>
#include <vector>

#include "gply/circuit.hpp"
#include "gply/mp.hpp"
#include "gply/poly.hpp"

namespace gply {

enum class StateKind { domain_wall, dimer, neel, crosscap };

StateKind parse_state_kind(const std::string& name);
const char* state_kind_name(StateKind k);

/// <Psi| U^n |Psi> as written, or with the bra projected onto zero momentum of the
/// two-site translation T^2: (2/L) sum_k <T^{2k} Psi| U^n |Psi>.
enum class Projection { none, zero_momentum };

Projection parse_projection(const std::string& name);
const char* projection_name(Projection p);

struct InitialState {
  StateKind kind = StateKind::domain_wall;
  int L = 0;
  int M = 0;  // domain wall magnon number
  /// sector M -> integer coefficients over sector_basis(L, M)
  std::map<int, std::vector<long>> sectors;

  long norm2() const;
  std::string name() const;
};

/// Domain wall 1^M 0^(L-M); Neel |0101...>; dimer prod_j (|10> - |01>) on bonds (2j-1, 2j);
/// crosscap prod_j (|00> + |11>) on site pairs (j, j + L/2).
InitialState build_initial_state(StateKind kind, int L, int M = -1);

struct DenominatorReport {
  // denominator = (q x^2 - 1)^minus_power (q x^2 + 1)^plus_power up to a constant
  unsigned minus_power = 0;
  unsigned plus_power = 0;
  unsigned d_power = 0;            // min of the two: power of q^2 x^4 - 1
  DensePoly common_factor;         // leftover (q x^2 -/+ 1) powers, monic
  unsigned ledger_K = 0;
};

struct AmplitudeResult {
  RationalFn reduced;              // coprime, monic denominator
  DensePoly normalized_numerator;  // Z[i] coefficients, constant term real positive when nonzero
  GaussRat unit;                   // reduced.num() == unit * normalized_numerator
  int numerator_degree = -1;
  bool x4_support = false;
  DenominatorReport denominator;
  unsigned n = 0;
  CircuitParams params;
  Projection projection = Projection::none;
  double seconds = 0;
};

AmplitudeResult loschmidt_exact(const InitialState& state, const CircuitParams& params, unsigned n,
                                Projection projection = Projection::none);

/// Repeated gate-by-gate application at the current precision.
mp::Complex loschmidt_numeric(const InitialState& state, const CircuitParams& params, const mp::Complex& x0,
                              unsigned n, Projection projection = Projection::none);

struct ZeroNumerator {
  DensePoly poly;
  int degree = -1;
  bool x4_support = false;
};

ZeroNumerator numerator_for_zeros(const AmplitudeResult& result);

/// Bra vector used for a sector under a projection, scaled to integers; the true bra is
/// bra_scale * returned vector.
std::vector<long> projected_bra(const InitialState& state, int M, Projection projection, GaussRat* bra_scale);

}  // namespace gply
