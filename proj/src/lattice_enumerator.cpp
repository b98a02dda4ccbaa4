#include "quasipack/lattice_enumerator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "quasipack/parallel.hpp"

namespace quasipack {

namespace {

inline std::size_t mix(std::size_t h, std::uint64_t v) {
  // splitmix64 finalizer folded into a running hash
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

std::size_t LatticePointHash::operator()(const LatticePoint& p) const noexcept {
  std::size_t h = p.size();
  for (std::int64_t c : p) h = mix(h, static_cast<std::uint64_t>(c));
  return h;
}

std::size_t PointSet::CellHash::operator()(const CellKey& k) const noexcept {
  std::size_t h = 0;
  for (std::int64_t c : k) h = mix(h, static_cast<std::uint64_t>(c));
  return h;
}

PointSet::PointSet(std::size_t dim, double tolerance) : dim_(dim), tolerance_(tolerance) {
  if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("PointSet: dimension must be 1..3");
  if (!(tolerance_ > 0.0)) throw std::invalid_argument("PointSet: tolerance must be positive");
}

PointSet::CellKey PointSet::cell_of(std::span<const double> x) const {
  CellKey key{0, 0, 0};
  for (std::size_t r = 0; r < dim_; ++r) {
    const double q = std::floor(x[r] / tolerance_);
    if (!(std::abs(q) < 9.0e18)) throw std::overflow_error("PointSet: coordinate out of range");
    key[r] = static_cast<std::int64_t>(q);
  }
  return key;
}

std::ptrdiff_t PointSet::find_near(std::span<const double> x) const {
  const CellKey base = cell_of(x);
  const int span_y = dim_ > 1 ? 1 : 0;
  const int span_z = dim_ > 2 ? 1 : 0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -span_y; dy <= span_y; ++dy) {
      for (int dz = -span_z; dz <= span_z; ++dz) {
        const CellKey key{base[0] + dx, base[1] + dy, base[2] + dz};
        auto it = cells_.find(key);
        if (it == cells_.end()) continue;
        for (std::size_t i : it->second) {
          bool near = true;
          for (std::size_t r = 0; r < dim_ && near; ++r) {
            near = std::abs(coords_[i * dim_ + r] - x[r]) <= tolerance_;
          }
          if (near) return static_cast<std::ptrdiff_t>(i);
        }
      }
    }
  }
  return -1;
}

bool PointSet::insert(std::span<const double> x) {
  if (x.size() != dim_) throw std::invalid_argument("PointSet: point has wrong dimension");
  if (find_near(x) >= 0) return false;
  cells_[cell_of(x)].push_back(size());
  coords_.insert(coords_.end(), x.begin(), x.end());
  return true;
}

bool PointSet::contains(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("PointSet: point has wrong dimension");
  return find_near(x) >= 0;
}

PointList PointSet::sorted() const {
  PointList out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticePoint initial_point(std::span<const double> tr) {
  LatticePoint p(tr.size());
  // std::round rounds halfway cases away from zero
  for (std::size_t i = 0; i < tr.size(); ++i) p[i] = static_cast<std::int64_t>(std::round(tr[i]));
  return p;
}

std::vector<LatticePoint> neighbors(const LatticePoint& p) {
  std::vector<LatticePoint> out;
  out.reserve(2 * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int step : {-1, 1}) {
      LatticePoint w = p;
      w[i] += step;
      out.push_back(std::move(w));
    }
  }
  return out;
}

RunResult run(const EmbeddingMatrix& b, const ConstraintSet& cs, const EngineConfig& config) {
  const std::size_t m = b.super_dim();
  config.validate(m);
  if (cs.super_dim() != m || cs.phys_dim() != b.phys_dim()) {
    throw std::invalid_argument("run: constraint set does not match the embedding");
  }

  RunResult result{PointSet(b.phys_dim(), config.dedup_tol), {}, {}};
  std::vector<LatticePoint> queue;
  std::unordered_set<LatticePoint, LatticePointHash> visited;
  queue.push_back(initial_point(config.tr));
  visited.insert(queue.front());

  std::vector<Membership> verdicts;
  std::size_t head = 0;
  while (head < queue.size()) {
    const std::size_t layer_end = queue.size();
    const std::size_t layer = layer_end - head;
    verdicts.assign(layer, Membership{});
    parallel_for(layer, config.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> v(m);
      for (std::size_t i = begin; i < end; ++i) {
        const LatticePoint& p = queue[head + i];
        for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<double>(p[j]) - config.tr[j];
        verdicts[i] = classify(v, cs, config.boundary_tol);
      }
    });

    std::vector<double> v(m);
    for (std::size_t i = 0; i < layer; ++i) {
      const std::size_t qi = head + i;
      ++result.stats.analysed;
      if (!verdicts[i].inside()) continue;

      for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<double>(queue[qi][j]) - config.tr[j];
      if (result.points.insert(project(b, v)) && verdicts[i].on_boundary) {
        ++result.stats.boundary_points;
      }
      result.accepted.push_back(queue[qi]);

      for (LatticePoint& w : neighbors(queue[qi])) {
        if (queue.size() >= config.max_enqueued) break;
        if (visited.insert(w).second) queue.push_back(std::move(w));
      }
    }
    head = layer_end;
  }
  result.stats.obtained = result.points.size();
  return result;
}

}  // namespace quasipack
