#pragma once

#include <vector>

#include "gply/circuit.hpp"
#include "zpoly.hpp"

namespace gply::detail {

// lambda * (d, b, c) with Gaussian-integer coefficients of unit integer content.
// In the variable y with stride s: d = q^2 y^(2s) - 1, b = (q^2-1) y^s, c = q (y^(2s) - 1).
struct ClearedGate {
  GaussInt d0, d2, b1, c0, c2;
  GaussRat lambda;
};

ClearedGate cleared_gate(const GaussRat& q);

struct ZEvolution {
  std::vector<ZPoly> state;
  unsigned K = 0;
  // d^K U^n psi = scale * state
  GaussRat scale{1};
};

ZEvolution evolve_z(const SectorBasis& basis, std::vector<ZPoly> init, const ClearedGate& gate, unsigned n,
                    unsigned stride);

}  // namespace gply::detail
