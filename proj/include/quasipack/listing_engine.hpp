#pragma once

#include "quasipack/cluster_geometry.hpp"
#include "quasipack/config.hpp"
#include "quasipack/lattice_enumerator.hpp"

namespace quasipack {

// The original FORTRAN 90 program's algorithm, kept as a benchmark baseline:
// half-widths by 2^(D+1)-corner maximisation with a huge sentinel for
// degenerate subsets, every minor recomputed for every analysed point, and
// linear scans for both the visited check and the duplicate check. It uses
// the same tolerances as run(), so both produce the same point set.
// Single-threaded; config.threads is ignored.
RunResult run_listing_faithful(const EmbeddingMatrix& b, const EngineConfig& config);

}  // namespace quasipack
