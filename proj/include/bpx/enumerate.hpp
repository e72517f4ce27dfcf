#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bpx/lattice.hpp"

namespace bpx {

struct EnumOptions {
  int workers = 1;
  uint64_t node_budget = 0;  // 0 = unlimited
};

struct EnumStats {
  uint64_t pairs = 0;  // +-pairs visited
  uint64_t nodes = 0;
};

// Tally of nonzero lattice vectors with 0 < (x,x) <= maxNorm, keyed by
// (norm, doubled pairings 2*(x,u_j)) for the supplied functionals u_j.
// Both x and -x are counted, so every value is even when k = 0.
// The zero vector is not included.
struct ThetaTally {
  long max_norm = 0;
  int k = 0;
  std::map<std::pair<long, std::vector<int32_t>>, long> counts;
  EnumStats stats;

  void merge(const ThetaTally& o);
};

// spec_weights: k rows, row j holding (b_i, u_j) for the original basis b_i.
ThetaTally short_vector_tally(const Lattice& L, long max_norm,
                              const std::vector<std::vector<long>>& spec_weights,
                              const EnumOptions& opt = {});

// One representative per +-pair, original-basis coordinates, sign-canonical
// (first nonzero coordinate positive), sorted.  For root rows and tests.
std::vector<std::vector<long>> short_vectors_list(const Lattice& L,
                                                       long max_norm,
                                                       const EnumOptions& opt = {});

// Independent bounded-box oracles (no reduction, no tree pruning); slow,
// used to cross-check the enumerator on small instances.
ThetaTally brute_force_tally(const Lattice& L, long max_norm,
                             const std::vector<std::vector<long>>& spec_weights);
std::vector<std::vector<long>> brute_force_list(const Lattice& L,
                                                     long max_norm);

}  // namespace bpx
