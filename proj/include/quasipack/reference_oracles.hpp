#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quasipack/cluster_geometry.hpp"
#include "quasipack/lattice_enumerator.hpp"
#include "quasipack/strip_engine.hpp"

// Membership and enumeration oracles that share no arithmetic with the
// determinant pathway. Meant for tests and diagnostics, not for production
// runs.
namespace quasipack::oracles {

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> y;  // box coordinates, |y_i| <= 1/2 + tol
  std::vector<double> c;  // physical-subspace coefficients
};

// Decides whether displaced = y + B^T c has a solution with every
// |y_i| <= 1/2 + tol, by a phase-one simplex over the bounded y and free c.
// On success the witness reproduces `displaced` to within 1e-8 in max-norm.
FeasibilityResult lp_strip_membership(const EmbeddingMatrix& b,
                                      std::span<const double> displaced, double tol = 1e-9);

// Exhaustive scan of the lattice box [-radius, radius]^M. Throws
// std::invalid_argument when the box holds more than 1e7 points.
PointSet box_scan(const EmbeddingMatrix& b, const ConstraintSet& cs, int radius,
                  std::span<const double> tr, double boundary_tol = 1e-9,
                  double dedup_tol = 1e-9);

// displaced minus its orthogonal projection onto the row span of B, through
// the D x D Gram system. Throws std::domain_error when B is rank deficient.
std::vector<double> perp_residual(const EmbeddingMatrix& b, std::span<const double> displaced);

// n-th iterate of L -> LS, S -> L starting from "L". Throws for n < 1.
std::string fibonacci_word(int n);

}  // namespace quasipack::oracles
