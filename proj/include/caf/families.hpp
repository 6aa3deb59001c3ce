#pragma once

#include <string>
#include <vector>

#include "caf/composition.hpp"

namespace caf {

/// sync, fifo, merg, lateasyncmerg, earlyasyncmerg, rout, oddfib
const std::vector<std::string>& family_names();

/// 1 2 3 4 6 8 12 16 24 32 48 64
const std::vector<int>& sweep_ks();

/// The k-th member of a parametric family, with every internal port hidden.
/// Sync_k and Fifo_k chain k primitives from p1 to p(k+1); the merger
/// families take k producers In1..Ink; rout and oddfib serve k consumers
/// Out1..Outk. Throws ConfigError for an unknown family or k < 1.
Composition family(const std::string& name, int k);

}  // namespace caf
