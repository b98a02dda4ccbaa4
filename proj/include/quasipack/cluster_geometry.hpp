#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quasipack/config.hpp"

namespace quasipack {

using Vec3 = std::array<double, 3>;

inline double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

struct RotationMatrix3 {
  std::array<std::array<double, 3>, 3> entries{};

  static RotationMatrix3 identity();

  Vec3 apply(const Vec3& v) const;
  RotationMatrix3 operator*(const RotationMatrix3& rhs) const;
  RotationMatrix3 transposed() const;
  double trace() const;
  double determinant() const;
};

enum class ShellKind { icosahedron, dodecahedron, icosidodecahedron };

std::string_view to_string(ShellKind kind);

struct Shell {
  ShellKind kind;
  double radius;
};

struct ClusterSpec {
  std::vector<Shell> shells;

  // Icosahedron, dodecahedron, icosidodecahedron, in that order.
  static ClusterSpec canonical(double r1 = 1.0, double r2 = 1.2, double r3 = 1.5);
};

// D x M real matrix stored column-major. Column j is the physical-space image
// of the j-th superspace basis vector. Construction only checks the shape;
// rank is a property callers query, since degenerate matrices are legitimate
// inputs for the constraint builder.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix(std::size_t phys_dim, const std::vector<std::vector<double>>& columns);

  std::size_t phys_dim() const { return phys_dim_; }
  std::size_t super_dim() const { return super_dim_; }

  double operator()(std::size_t row, std::size_t col) const {
    return data_[col * phys_dim_ + row];
  }
  std::span<const double> column(std::size_t col) const {
    return {data_.data() + col * phys_dim_, phys_dim_};
  }
  std::vector<double> row(std::size_t r) const;

  // Determinant of the D x D Gram matrix of the row vectors.
  double gram_determinant() const;
  bool has_full_rank(double tol = 1e-10) const { return gram_determinant() > tol; }

  EmbeddingMatrix scaled(double factor) const;

 private:
  std::size_t phys_dim_;
  std::size_t super_dim_;
  std::vector<double> data_;
};

RotationMatrix3 build_rotation_c5();

// Columns contributed by one shell, in the fixed order used by the
// icosahedral embedding. Throws std::invalid_argument for radius <= 0.
std::vector<Vec3> build_shell(ShellKind kind, double radius, const RotationMatrix3& c5);

// Throws std::invalid_argument for an empty cluster or a non-positive radius.
EmbeddingMatrix build_embedding(const ClusterSpec& spec);

// Every column together with its negation: the full centrally symmetric
// cluster (62 points for the canonical spec).
std::vector<std::vector<double>> cluster_points(const EmbeddingMatrix& b);

struct Preset {
  std::string name;
  EmbeddingMatrix embedding;
  EngineConfig config;
  std::optional<ClusterSpec> spec;  // set for cluster-built presets
};

std::vector<std::string> preset_names();

// Throws std::invalid_argument for a name not in preset_names().
Preset preset(std::string_view name);

}  // namespace quasipack
