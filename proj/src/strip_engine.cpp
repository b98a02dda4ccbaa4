#include "quasipack/strip_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "quasipack/parallel.hpp"

namespace quasipack {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double column_minor(const EmbeddingMatrix& b, std::span<const std::size_t> c) {
  switch (c.size()) {
    case 1: return b(0, c[0]);
    case 2: return b(0, c[0]) * b(1, c[1]) - b(1, c[0]) * b(0, c[1]);
    case 3:
      return b(0, c[0]) * b(1, c[1]) * b(2, c[2]) + b(1, c[0]) * b(2, c[1]) * b(0, c[2]) +
             b(2, c[0]) * b(0, c[1]) * b(1, c[2]) - b(2, c[0]) * b(1, c[1]) * b(0, c[2]) -
             b(0, c[0]) * b(2, c[1]) * b(1, c[2]) - b(1, c[0]) * b(0, c[1]) * b(2, c[2]);
    default: throw std::invalid_argument("column_minor: only 1x1, 2x2 and 3x3 minors");
  }
}

std::vector<double> subset_cofactors(const EmbeddingMatrix& b,
                                     std::span<const std::size_t> indices) {
  const std::size_t d = b.phys_dim();
  if (indices.size() != d + 1) {
    throw std::invalid_argument("subset_cofactors: expected D+1 indices");
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= b.super_dim() || (k > 0 && indices[k] <= indices[k - 1])) {
      throw std::invalid_argument("subset_cofactors: indices must be strictly increasing and < M");
    }
  }
  std::vector<double> cof(d + 1);
  std::array<std::size_t, 3> rest{};
  for (std::size_t k = 0; k <= d; ++k) {
    std::size_t n = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      if (j != k) rest[n++] = indices[j];
    }
    const double minor = column_minor(b, std::span<const std::size_t>(rest.data(), d));
    cof[k] = (k % 2 == 0) ? minor : -minor;
  }
  return cof;
}

double half_width(std::span<const double> cofactors) {
  double s = 0.0;
  for (double c : cofactors) s += std::abs(c);
  return 0.5 * s;
}

ConstraintSet build_constraints(const EmbeddingMatrix& b, double degeneracy_tol,
                                unsigned threads) {
  const std::size_t m = b.super_dim();
  const std::size_t arity = b.phys_dim() + 1;
  const std::size_t total = binomial(m, arity);

  std::vector<std::size_t> subsets;
  subsets.reserve(total * arity);
  std::vector<std::size_t> idx(arity);
  for (std::size_t k = 0; k < arity; ++k) idx[k] = k;
  while (true) {
    subsets.insert(subsets.end(), idx.begin(), idx.end());
    std::size_t k = arity;
    while (k > 0 && idx[k - 1] == m - arity + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < arity; ++j) idx[j] = idx[j - 1] + 1;
  }

  std::vector<double> cofactors(total * arity);
  std::vector<double> widths(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      auto cof = subset_cofactors(b, std::span<const std::size_t>(&subsets[s * arity], arity));
      std::copy(cof.begin(), cof.end(), cofactors.begin() + s * arity);
      widths[s] = half_width(cof);
    }
  });

  const double max_width = widths.empty() ? 0.0 : *std::max_element(widths.begin(), widths.end());
  const double cutoff = degeneracy_tol * max_width;

  ConstraintSet cs;
  cs.phys_dim_ = b.phys_dim();
  cs.super_dim_ = m;
  for (std::size_t s = 0; s < total; ++s) {
    if (!(widths[s] > cutoff)) {
      ++cs.degenerate_count_;
      continue;
    }
    for (std::size_t k = 0; k < arity; ++k) {
      cs.indices_.push_back(static_cast<std::uint32_t>(subsets[s * arity + k]));
      cs.cofactors_.push_back(cofactors[s * arity + k]);
    }
    cs.half_widths_.push_back(widths[s]);
  }
  return cs;
}

Membership classify(std::span<const double> displaced, const ConstraintSet& cs,
                    double boundary_tol) {
  if (displaced.size() != cs.super_dim()) {
    throw std::invalid_argument("classify: displaced vector has wrong length");
  }
  const std::size_t arity = cs.arity();
  const auto idx = cs.flat_indices();
  const auto cof = cs.flat_cofactors();
  const auto widths = cs.half_widths();

  Membership result;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const std::uint32_t* ix = idx.data() + i * arity;
    const double* c = cof.data() + i * arity;
    double value = 0.0;
    for (std::size_t k = 0; k < arity; ++k) value += c[k] * displaced[ix[k]];
    const double magnitude = std::abs(value);
    const double margin = boundary_tol * widths[i];
    if (magnitude > widths[i] + margin) {
      return {MembershipStatus::outside, false};
    }
    if (magnitude >= widths[i] - margin) result.on_boundary = true;
  }
  return result;
}

std::vector<double> project(const EmbeddingMatrix& b, std::span<const double> displaced) {
  if (displaced.size() != b.super_dim()) {
    throw std::invalid_argument("project: displaced vector has wrong length");
  }
  std::vector<double> x(b.phys_dim(), 0.0);
  for (std::size_t j = 0; j < b.super_dim(); ++j) {
    for (std::size_t r = 0; r < b.phys_dim(); ++r) x[r] += displaced[j] * b(r, j);
  }
  return x;
}

}  // namespace quasipack
