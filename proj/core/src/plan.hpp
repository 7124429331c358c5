#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gply/circuit.hpp"

namespace gply::detail {

// Per gate: the basis index pairs (a, p) with a < p differing by a swap on the gate's sites,
// and the indices where the gate acts diagonally.
struct GateAction {
  int site_i = 0;
  int site_j = 0;
  std::vector<std::pair<std::size_t, std::size_t>> mixed;
  std::vector<std::size_t> diagonal;
};

std::vector<GateAction> floquet_plan(const SectorBasis& basis);

}  // namespace gply::detail
