#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bpx/lattice.hpp"

namespace bpx {

// One model of the 24-cusp atlas: an even unimodular rank-24 lattice
// together with its root system (empty for the Leech cusp).
struct CuspModel {
  std::string label;
  LatticePtr lattice;
  RootSystemData roots;            // empty components for Leech
  QMat basis_in_root_coords;       // rows: lattice basis in the root basis (Niemeier only)
};

// Cached atlas access; constructions are verified against the module
// invariants (even, unimodular, root count 24 h(R), Leech minimum 4).
const CuspModel& cusp_model(const std::string& label);

// Extended binary Golay code basis, 12 rows of 24 bits (0/1).
const std::vector<std::vector<int>>& golay_basis();

// All 4096 codewords (0/1 rows); built once, used by tests.
std::vector<std::vector<int>> golay_codewords();

}  // namespace bpx
