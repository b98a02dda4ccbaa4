#include "quasipack/config.hpp"

#include <stdexcept>
#include <string>

namespace quasipack {

void EngineConfig::validate(std::size_t super_dim) const {
  if (tr.size() != super_dim) {
    throw std::invalid_argument("translation has " + std::to_string(tr.size()) +
                                " components, expected " + std::to_string(super_dim));
  }
  if (max_enqueued == 0) throw std::invalid_argument("max_enqueued must be at least 1");
  if (!(boundary_tol > 0.0) || !(degeneracy_tol > 0.0) || !(dedup_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
}

std::vector<double> broadcast_tr(double value, std::size_t super_dim) {
  return std::vector<double>(super_dim, value);
}

}  // namespace quasipack
