#include "quasipack/listing_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "quasipack/strip_engine.hpp"

namespace quasipack {

namespace {

struct Subset {
  std::array<std::size_t, 4> idx{};
  double bound = 0.0;
};

// Signed minors of the subset, recomputed from B on every call.
void minors_of(const EmbeddingMatrix& b, const Subset& s, std::size_t arity, double* out) {
  std::array<std::size_t, 3> rest{};
  for (std::size_t k = 0; k < arity; ++k) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < arity; ++j) {
      if (j != k) rest[n++] = s.idx[j];
    }
    const double minor = column_minor(b, std::span<const std::size_t>(rest.data(), arity - 1));
    out[k] = (k % 2 == 0) ? minor : -minor;
  }
}

}  // namespace

RunResult run_listing_faithful(const EmbeddingMatrix& b, const EngineConfig& config) {
  const std::size_t m = b.super_dim();
  const std::size_t d = b.phys_dim();
  const std::size_t arity = d + 1;
  config.validate(m);

  std::vector<Subset> subsets;
  {
    std::vector<std::size_t> idx(arity);
    for (std::size_t k = 0; k < arity; ++k) idx[k] = k;
    while (true) {
      Subset s;
      std::copy(idx.begin(), idx.end(), s.idx.begin());
      subsets.push_back(s);
      std::size_t k = arity;
      while (k > 0 && idx[k - 1] == m - arity + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < arity; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  std::array<double, 4> cof{};
  double max_bound = 0.0;
  for (Subset& s : subsets) {
    minors_of(b, s, arity, cof.data());
    double best = 0.0;  // the listing starts S at zero
    for (unsigned corner = 0; corner < (1u << arity); ++corner) {
      double value = 0.0;
      for (std::size_t k = 0; k < arity; ++k) {
        value += ((corner >> k) & 1u ? 0.5 : -0.5) * cof[k];
      }
      best = std::max(best, value);
    }
    s.bound = best;
    max_bound = std::max(max_bound, best);
  }
  // A degenerate functional gets a bound no lattice point can reach.
  double sentinel = 0.0;
  for (std::size_t j = 0; j < m; ++j) sentinel += b(0, j) * b(0, j);
  sentinel *= static_cast<double>(config.max_enqueued);
  for (Subset& s : subsets) {
    if (!(s.bound > config.degeneracy_tol * max_bound)) s.bound = sentinel + max_bound;
  }

  RunResult result{PointSet(d, config.dedup_tol), {}, {}};
  std::vector<std::int64_t> pts;  // row-major, one row per enqueued point
  pts.reserve(config.max_enqueued * m);
  const LatticePoint start = initial_point(config.tr);
  pts.insert(pts.end(), start.begin(), start.end());
  std::size_t enqueued = 1;

  std::vector<double> obtained;  // row-major physical points
  std::vector<double> v(m);
  std::vector<std::int64_t> w(m);
  for (std::size_t i = 0; i < enqueued; ++i) {
    ++result.stats.analysed;
    const std::int64_t* p = &pts[i * m];
    for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<double>(p[j]) - config.tr[j];

    bool inside = true;
    bool on_boundary = false;
    for (const Subset& s : subsets) {
      minors_of(b, s, arity, cof.data());
      double value = 0.0;
      for (std::size_t k = 0; k < arity; ++k) value += cof[k] * v[s.idx[k]];
      const double magnitude = std::abs(value);
      const double margin = config.boundary_tol * s.bound;
      if (magnitude > s.bound + margin) inside = false;
      if (magnitude >= s.bound - margin && magnitude <= s.bound + margin) on_boundary = true;
    }
    if (!inside) continue;

    const std::vector<double> x = project(b, v);
    bool fresh = true;
    for (std::size_t q = 0; q < obtained.size() / d && fresh; ++q) {
      bool same = true;
      for (std::size_t r = 0; r < d && same; ++r) {
        same = std::abs(obtained[q * d + r] - x[r]) <= config.dedup_tol;
      }
      if (same) fresh = false;
    }
    if (fresh) {
      if (on_boundary) ++result.stats.boundary_points;
      obtained.insert(obtained.end(), x.begin(), x.end());
      result.points.insert(x);
    }
    result.accepted.emplace_back(p, p + m);

    for (std::size_t axis = 0; axis < m; ++axis) {
      for (int step = -1; step <= 1; ++step) {
        std::copy(&pts[i * m], &pts[i * m] + m, w.begin());
        w[axis] += step;
        bool seen = false;
        for (std::size_t q = 0; q < enqueued && !seen; ++q) {
          seen = std::equal(w.begin(), w.end(), &pts[q * m]);
        }
        if (!seen && enqueued < config.max_enqueued) {
          pts.insert(pts.end(), w.begin(), w.end());
          ++enqueued;
        }
      }
    }
  }
  result.stats.obtained = result.points.size();
  return result;
}

}  // namespace quasipack
