#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpx/enumerate.hpp"

namespace bpx {

// Enumeration caches: one versioned text file per (gram digest,
// specialization digest, maxNorm), holding the accumulated
// (norm, ell-key) counts.  Directory comes from BPX_CACHE_DIR; caching is
// disabled when the variable is unset.

std::string cache_directory();  // "" when disabled

std::string spec_weights_digest(const std::vector<std::vector<long>>& w);

std::optional<ThetaTally> cache_load(const Lattice& L,
                                     const std::vector<std::vector<long>>& spec_weights,
                                     long max_norm);

void cache_store(const Lattice& L,
                 const std::vector<std::vector<long>>& spec_weights,
                 const ThetaTally& tally);

// tally with cache read-through/write-back
ThetaTally cached_tally(const Lattice& L, long max_norm,
                        const std::vector<std::vector<long>>& spec_weights,
                        const EnumOptions& opt = {});

struct CacheEntryInfo {
  std::string file;
  bool valid = false;
  std::string reason;
  int rank = 0;
  long max_norm = 0;
  size_t entries = 0;
};

std::vector<CacheEntryInfo> cache_list(bool validate);

// quarantine invalid files (rename to .quarantined); returns their names
std::vector<std::string> cache_quarantine();

// remove quarantined files; returns count
int cache_gc();

}  // namespace bpx
