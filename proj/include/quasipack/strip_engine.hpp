#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quasipack/cluster_geometry.hpp"

namespace quasipack {

// One facet pair of the acceptance strip. For a displaced superspace vector v
// the functional is L(v) = sum_k cofactors[k] * v[indices[k]]; the vector is
// inside this slab when |L(v)| <= half_width. Indices are 0-based.
struct StripConstraint {
  std::span<const std::uint32_t> indices;
  std::span<const double> cofactors;
  double half_width;
};

// Flat storage of every non-degenerate (D+1)-column functional.
class ConstraintSet {
 public:
  std::size_t phys_dim() const { return phys_dim_; }
  std::size_t super_dim() const { return super_dim_; }
  std::size_t arity() const { return phys_dim_ + 1; }
  std::size_t size() const { return half_widths_.size(); }
  std::size_t degenerate_count() const { return degenerate_count_; }

  StripConstraint operator[](std::size_t i) const {
    return {{indices_.data() + i * arity(), arity()},
            {cofactors_.data() + i * arity(), arity()},
            half_widths_[i]};
  }

  // Row-major views for the per-point hot loop: constraint i occupies
  // [i * arity(), (i + 1) * arity()) of the first two.
  std::span<const std::uint32_t> flat_indices() const { return indices_; }
  std::span<const double> flat_cofactors() const { return cofactors_; }
  std::span<const double> half_widths() const { return half_widths_; }

 private:
  friend ConstraintSet build_constraints(const EmbeddingMatrix&, double, unsigned);

  std::size_t phys_dim_ = 0;
  std::size_t super_dim_ = 0;
  std::size_t degenerate_count_ = 0;
  std::vector<std::uint32_t> indices_;
  std::vector<double> cofactors_;
  std::vector<double> half_widths_;
};

enum class MembershipStatus { inside, outside };

struct Membership {
  MembershipStatus status = MembershipStatus::inside;
  bool on_boundary = false;  // only ever set when inside

  bool inside() const { return status == MembershipStatus::inside; }
};

// Signed D x D minors of B over the given (D+1) strictly increasing columns:
// cofactor_k = (-1)^k * det(B restricted to the other D columns), k 0-based.
// Throws std::invalid_argument on a malformed index tuple.
std::vector<double> subset_cofactors(const EmbeddingMatrix& b,
                                     std::span<const std::size_t> indices);

// max over d in {-1/2, 1/2}^(D+1) of <d, cofactors>, in closed form.
double half_width(std::span<const double> cofactors);

// All binomial(M, D+1) subsets in lexicographic order; subsets whose
// half-width is at most degeneracy_tol times the largest one are dropped and
// counted in degenerate_count().
ConstraintSet build_constraints(const EmbeddingMatrix& b, double degeneracy_tol = 1e-12,
                                unsigned threads = 1);

// boundary_tol is relative to each constraint's half-width. Throws
// std::invalid_argument if displaced.size() != cs.super_dim().
Membership classify(std::span<const double> displaced, const ConstraintSet& cs,
                    double boundary_tol = 1e-9);

// B * displaced. Throws std::invalid_argument on a length mismatch.
std::vector<double> project(const EmbeddingMatrix& b, std::span<const double> displaced);

// Determinant of the D x D submatrix of B formed by the given columns, D <= 3.
// The 3 x 3 case uses the same term order as the cofactor expansion above, so
// every caller gets bit-identical minors.
double column_minor(const EmbeddingMatrix& b, std::span<const std::size_t> columns);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace quasipack
