#pragma once

#include <cstddef>
#include <vector>

namespace quasipack {

// Knobs of a single generation run. `tr` lives in lattice units and must have
// one component per superspace dimension.
struct EngineConfig {
  std::vector<double> tr;
  std::size_t max_enqueued = 10000;
  double boundary_tol = 1e-9;   // relative to each constraint's half-width
  double degeneracy_tol = 1e-12;  // relative to the largest half-width
  double dedup_tol = 1e-9;      // absolute, max-norm in physical space
  unsigned threads = 1;

  // Throws std::invalid_argument when the config cannot drive a run over a
  // superspace of dimension `super_dim`.
  void validate(std::size_t super_dim) const;
};

// Scalar translation broadcast to every superspace component.
std::vector<double> broadcast_tr(double value, std::size_t super_dim);

}  // namespace quasipack
