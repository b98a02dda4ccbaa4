#include "quasipack/reference_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quasipack::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

// Dense phase-one simplex for A x = rhs, lo <= x <= hi, where the last
// `rows` columns of A are artificial unit columns. Nonbasic variables sit at
// one of their bounds, or at zero when free. Entering and leaving choices
// follow Bland's rule so the search terminates on degenerate vertices.
class BoundedPhaseOne {
 public:
  BoundedPhaseOne(std::vector<std::vector<double>> tableau, std::vector<double> x,
                  std::vector<double> lo, std::vector<double> hi, std::vector<double> cost,
                  std::vector<std::size_t> basis)
      : t_(std::move(tableau)), x_(std::move(x)), lo_(std::move(lo)), hi_(std::move(hi)),
        cost_(std::move(cost)), basis_(std::move(basis)), is_basic_(x_.size(), false) {
    for (std::size_t j : basis_) is_basic_[j] = true;
  }

  // Returns the minimised objective.
  double solve() {
    const std::size_t n = x_.size();
    const std::size_t rows = basis_.size();
    std::vector<double> reduced(n);
    for (int iter = 0; iter < 100000; ++iter) {
      for (std::size_t j = 0; j < n; ++j) {
        double d = cost_[j];
        for (std::size_t i = 0; i < rows; ++i) d -= cost_[basis_[i]] * t_[i][j];
        reduced[j] = d;
      }

      std::size_t entering = n;
      double dir = 0.0;
      for (std::size_t j = 0; j < n && entering == n; ++j) {
        if (is_basic_[j]) continue;
        if (reduced[j] < -kCostEps && x_[j] < hi_[j]) {
          entering = j;
          dir = 1.0;
        } else if (reduced[j] > kCostEps && x_[j] > lo_[j]) {
          entering = j;
          dir = -1.0;
        }
      }
      if (entering == n) return objective();

      double step = hi_[entering] - lo_[entering];  // bound flip
      std::size_t leave_row = rows;
      for (std::size_t i = 0; i < rows; ++i) {
        const double rate = dir * t_[i][entering];  // basic var moves by -rate * step
        const std::size_t bv = basis_[i];
        double limit = kInf;
        if (rate > kPivotEps) {
          limit = (x_[bv] - lo_[bv]) / rate;
        } else if (rate < -kPivotEps && hi_[bv] < kInf) {
          limit = (hi_[bv] - x_[bv]) / -rate;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        if (limit < step || (limit == step && leave_row < rows && bv < basis_[leave_row])) {
          step = limit;
          leave_row = i;
        }
      }
      if (step == kInf) throw std::logic_error("phase-one objective unbounded");

      for (std::size_t i = 0; i < rows; ++i) x_[basis_[i]] -= dir * step * t_[i][entering];
      x_[entering] += dir * step;
      if (leave_row == rows) continue;

      const std::size_t leaving = basis_[leave_row];
      // Snap the leaving variable onto the bound it reached.
      const double rate = dir * t_[leave_row][entering];
      x_[leaving] = rate > 0 ? lo_[leaving] : hi_[leaving];
      pivot(leave_row, entering);
    }
    throw std::runtime_error("phase-one simplex did not converge");
  }

  const std::vector<double>& values() const { return x_; }

 private:
  double objective() const {
    double s = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) s += cost_[j] * x_[j];
    return s;
  }

  void pivot(std::size_t r, std::size_t col) {
    const double p = t_[r][col];
    for (double& e : t_[r]) e /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[r][j];
    }
    is_basic_[basis_[r]] = false;
    basis_[r] = col;
    is_basic_[col] = true;
  }

  std::vector<std::vector<double>> t_;
  std::vector<double> x_, lo_, hi_, cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
};

}  // namespace

FeasibilityResult lp_strip_membership(const EmbeddingMatrix& b,
                                      std::span<const double> displaced, double tol) {
  const std::size_t m = b.super_dim();
  const std::size_t d = b.phys_dim();
  if (displaced.size() != m) {
    throw std::invalid_argument("lp_strip_membership: displaced vector has wrong length");
  }
  const double bound = 0.5 + tol;

  // Columns: y_0..y_{m-1}, c_0..c_{d-1}, a_0..a_{m-1}.
  const std::size_t n = 2 * m + d;
  std::vector<double> lo(n), hi(n), x(n, 0.0), cost(n, 0.0);
  std::vector<std::vector<double>> tableau(m, std::vector<double>(n, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    lo[i] = -bound;
    hi[i] = bound;
    x[i] = displaced[i] >= 0.0 ? bound : -bound;
  }
  for (std::size_t r = 0; r < d; ++r) {
    lo[m + r] = -kInf;
    hi[m + r] = kInf;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = m + d + i;
    lo[a] = 0.0;
    hi[a] = kInf;
    cost[a] = 1.0;
    const double residual = displaced[i] - x[i];
    const double sign = residual >= 0.0 ? 1.0 : -1.0;
    x[a] = std::abs(residual);
    // Row i scaled by sign so the artificial column is +e_i.
    tableau[i][i] = sign;
    for (std::size_t r = 0; r < d; ++r) tableau[i][m + r] = sign * b(r, i);
    tableau[i][a] = 1.0;
    basis[i] = a;
  }

  BoundedPhaseOne lp(std::move(tableau), std::move(x), std::move(lo), std::move(hi),
                     std::move(cost), std::move(basis));
  lp.solve();
  const auto& values = lp.values();

  FeasibilityResult result;
  result.y.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
  result.c.assign(values.begin() + static_cast<std::ptrdiff_t>(m),
                  values.begin() + static_cast<std::ptrdiff_t>(m + d));
  for (double& yi : result.y) yi = std::clamp(yi, -bound, bound);

  // Judge feasibility on the recomputed residual rather than the tableau's
  // running objective, which accumulates pivoting error.
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double recon = result.y[i];
    for (std::size_t r = 0; r < d; ++r) recon += b(r, i) * result.c[r];
    worst = std::max(worst, std::abs(displaced[i] - recon));
  }
  result.feasible = worst <= 1e-8;
  if (!result.feasible) {
    result.y.clear();
    result.c.clear();
  }
  return result;
}

PointSet box_scan(const EmbeddingMatrix& b, const ConstraintSet& cs, int radius,
                  std::span<const double> tr, double boundary_tol, double dedup_tol) {
  const std::size_t m = b.super_dim();
  if (radius < 0) throw std::invalid_argument("box_scan: negative radius");
  if (tr.size() != m) throw std::invalid_argument("box_scan: translation has wrong length");
  const double side = 2.0 * radius + 1.0;
  if (static_cast<double>(m) * std::log10(side) > 7.0 + 1e-12) {
    throw std::invalid_argument("box_scan: box too large");
  }

  PointSet out(b.phys_dim(), dedup_tol);
  std::vector<std::int64_t> p(m, -radius);
  std::vector<double> v(m);
  while (true) {
    for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<double>(p[j]) - tr[j];
    if (classify(v, cs, boundary_tol).inside()) out.insert(project(b, v));
    std::size_t k = 0;
    while (k < m && p[k] == radius) p[k++] = -radius;
    if (k == m) break;
    ++p[k];
  }
  return out;
}

std::vector<double> perp_residual(const EmbeddingMatrix& b, std::span<const double> displaced) {
  const std::size_t m = b.super_dim();
  const std::size_t d = b.phys_dim();
  if (displaced.size() != m) throw std::invalid_argument("perp_residual: wrong length");
  if (!b.has_full_rank()) throw std::domain_error("perp_residual: embedding is rank deficient");

  // Normal equations (B B^T) c = B v, solved by Gaussian elimination.
  std::vector<std::vector<double>> g(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t j = 0; j < m; ++j) g[r][s] += b(r, j) * b(s, j);
    }
    for (std::size_t j = 0; j < m; ++j) g[r][d] += b(r, j) * displaced[j];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    }
    std::swap(g[col], g[piv]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = g[r][col] / g[col][col];
      for (std::size_t s = col; s <= d; ++s) g[r][s] -= f * g[col][s];
    }
  }
  std::vector<double> residual(displaced.begin(), displaced.end());
  for (std::size_t r = 0; r < d; ++r) {
    const double coeff = g[r][d] / g[r][r];
    for (std::size_t j = 0; j < m; ++j) residual[j] -= coeff * b(r, j);
  }
  return residual;
}

std::string fibonacci_word(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_word: n must be >= 1");
  std::string word = "L";
  for (int i = 1; i < n; ++i) {
    std::string next;
    next.reserve(word.size() * 2);
    for (char ch : word) next += (ch == 'L') ? "LS" : "L";
    word = std::move(next);
  }
  return word;
}

}  // namespace quasipack::oracles
