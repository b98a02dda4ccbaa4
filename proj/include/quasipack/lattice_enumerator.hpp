#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "quasipack/cluster_geometry.hpp"
#include "quasipack/config.hpp"
#include "quasipack/strip_engine.hpp"

namespace quasipack {

using LatticePoint = std::vector<std::int64_t>;

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept;
};

using PointList = std::vector<std::vector<double>>;

// Physical points with tolerance-keyed deduplication: a point is rejected
// when an existing one lies within `tolerance` in the max-norm. Lookup hashes
// the coordinates quantized to the tolerance and probes the 3^D adjacent
// cells.
class PointSet {
 public:
  PointSet(std::size_t dim, double tolerance);

  std::size_t dim() const { return dim_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }

  // Returns false (and leaves the set unchanged) on a near-duplicate.
  bool insert(std::span<const double> x);
  bool contains(std::span<const double> x) const;

  // Lexicographically sorted copy, the canonical emission order.
  PointList sorted() const;

 private:
  using CellKey = std::array<std::int64_t, 3>;
  struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };

  CellKey cell_of(std::span<const double> x) const;
  std::ptrdiff_t find_near(std::span<const double> x) const;

  std::size_t dim_;
  double tolerance_;
  std::vector<double> coords_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

// Counters: popped lattice points, distinct physical points emitted, and how
// many of those were classified on a strip facet.
struct RunStats {
  std::size_t analysed = 0;
  std::size_t obtained = 0;
  std::size_t boundary_points = 0;
};

struct RunResult {
  PointSet points;
  RunStats stats;
  std::vector<LatticePoint> accepted;  // every Inside lattice point, in pop order
};

// Componentwise round-half-away-from-zero.
LatticePoint initial_point(std::span<const double> tr);

// p - e_1, p + e_1, p - e_2, ... ; p itself is never included.
std::vector<LatticePoint> neighbors(const LatticePoint& p);

// Breadth-first search over Z^M from initial_point(config.tr). Points are
// classified by their displacement p - tr; accepted ones are projected,
// deduplicated, and expanded while fewer than config.max_enqueued points
// have ever been enqueued. Classification of a BFS layer may run on
// config.threads workers; the bookkeeping is always applied in serial order.
RunResult run(const EmbeddingMatrix& b, const ConstraintSet& cs, const EngineConfig& config);

}  // namespace quasipack
