#include "quasipack/cluster_geometry.hpp"

#include <stdexcept>

namespace quasipack {

RotationMatrix3 RotationMatrix3::identity() {
  RotationMatrix3 m;
  for (int i = 0; i < 3; ++i) m.entries[i][i] = 1.0;
  return m;
}

Vec3 RotationMatrix3::apply(const Vec3& v) const {
  Vec3 out{};
  for (int j = 0; j < 3; ++j) {
    out[j] = entries[j][0] * v[0] + entries[j][1] * v[1] + entries[j][2] * v[2];
  }
  return out;
}

RotationMatrix3 RotationMatrix3::operator*(const RotationMatrix3& rhs) const {
  RotationMatrix3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out.entries[i][j] += entries[i][k] * rhs.entries[k][j];
  return out;
}

RotationMatrix3 RotationMatrix3::transposed() const {
  RotationMatrix3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.entries[i][j] = entries[j][i];
  return out;
}

double RotationMatrix3::trace() const { return entries[0][0] + entries[1][1] + entries[2][2]; }

double RotationMatrix3::determinant() const {
  const auto& a = entries;
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::string_view to_string(ShellKind kind) {
  switch (kind) {
    case ShellKind::icosahedron: return "icosahedron";
    case ShellKind::dodecahedron: return "dodecahedron";
    case ShellKind::icosidodecahedron: return "icosidodecahedron";
  }
  return "unknown";
}

ClusterSpec ClusterSpec::canonical(double r1, double r2, double r3) {
  return ClusterSpec{{{ShellKind::icosahedron, r1},
                      {ShellKind::dodecahedron, r2},
                      {ShellKind::icosidodecahedron, r3}}};
}

EmbeddingMatrix::EmbeddingMatrix(std::size_t phys_dim,
                                 const std::vector<std::vector<double>>& columns)
    : phys_dim_(phys_dim), super_dim_(columns.size()) {
  if (phys_dim_ < 1 || phys_dim_ > 3) {
    throw std::invalid_argument("embedding: physical dimension must be 1, 2 or 3");
  }
  if (super_dim_ < phys_dim_ + 1) {
    throw std::invalid_argument("embedding: need at least D+1 columns");
  }
  data_.reserve(phys_dim_ * super_dim_);
  for (const auto& col : columns) {
    if (col.size() != phys_dim_) {
      throw std::invalid_argument("embedding: column length differs from physical dimension");
    }
    data_.insert(data_.end(), col.begin(), col.end());
  }
}

std::vector<double> EmbeddingMatrix::row(std::size_t r) const {
  std::vector<double> out(super_dim_);
  for (std::size_t j = 0; j < super_dim_; ++j) out[j] = (*this)(r, j);
  return out;
}

double EmbeddingMatrix::gram_determinant() const {
  std::array<std::array<double, 3>, 3> g{};
  for (std::size_t a = 0; a < phys_dim_; ++a) {
    for (std::size_t b = 0; b < phys_dim_; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < super_dim_; ++j) s += (*this)(a, j) * (*this)(b, j);
      g[a][b] = s;
    }
  }
  switch (phys_dim_) {
    case 1: return g[0][0];
    case 2: return g[0][0] * g[1][1] - g[0][1] * g[1][0];
    default:
      return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
             g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
             g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  }
}

EmbeddingMatrix EmbeddingMatrix::scaled(double factor) const {
  EmbeddingMatrix out = *this;
  for (double& x : out.data_) x *= factor;
  return out;
}

RotationMatrix3 build_rotation_c5() {
  const double t = golden_ratio();
  RotationMatrix3 c5;
  c5.entries = {{{(t - 1) / 2.0, -t / 2.0, 1 / 2.0},
                 {t / 2.0, 1 / 2.0, (t - 1) / 2.0},
                 {-1 / 2.0, (t - 1) / 2.0, t / 2.0}}};
  return c5;
}

namespace {

// A seed direction, the divisor that brings it to unit length, and how many
// columns its C5 orbit contributes (the seed itself included).
struct ShellSeed {
  Vec3 direction;
  double divisor;
  int orbit;
};

std::vector<ShellSeed> shell_seeds(ShellKind kind) {
  const double t = golden_ratio();
  switch (kind) {
    case ShellKind::icosahedron: {
      const double d = std::sqrt(t + 2.0);
      return {{{1.0, t, 0.0}, d, 5}, {{0.0, 1.0, t}, d, 1}};
    }
    case ShellKind::dodecahedron: {
      const double d = std::sqrt(3.0);
      return {{{1.0, 1.0, 1.0}, d, 5}, {{1.0, -1.0, 1.0}, d, 5}};
    }
    case ShellKind::icosidodecahedron:
      return {{{1.0, 0.0, 0.0}, 1.0, 5}, {{0.0, 1.0, 0.0}, 1.0, 5}, {{0.0, 0.0, 1.0}, 1.0, 5}};
  }
  throw std::invalid_argument("unknown shell kind");
}

}  // namespace

std::vector<Vec3> build_shell(ShellKind kind, double radius, const RotationMatrix3& c5) {
  if (!(radius > 0.0)) throw std::invalid_argument("shell radius must be positive");
  std::vector<Vec3> columns;
  for (const ShellSeed& seed : shell_seeds(kind)) {
    Vec3 v{};
    for (int k = 0; k < 3; ++k) v[k] = seed.direction[k] * radius / seed.divisor;
    columns.push_back(v);
    for (int i = 1; i < seed.orbit; ++i) {
      v = c5.apply(v);
      columns.push_back(v);
    }
  }
  return columns;
}

EmbeddingMatrix build_embedding(const ClusterSpec& spec) {
  if (spec.shells.empty()) throw std::invalid_argument("cluster spec has no shells");
  const RotationMatrix3 c5 = build_rotation_c5();
  std::vector<std::vector<double>> columns;
  for (const Shell& shell : spec.shells) {
    for (const Vec3& v : build_shell(shell.kind, shell.radius, c5)) {
      columns.emplace_back(v.begin(), v.end());
    }
  }
  return EmbeddingMatrix(3, columns);
}

std::vector<std::vector<double>> cluster_points(const EmbeddingMatrix& b) {
  std::vector<std::vector<double>> points;
  points.reserve(2 * b.super_dim());
  for (std::size_t j = 0; j < b.super_dim(); ++j) {
    auto col = b.column(j);
    std::vector<double> plus(col.begin(), col.end());
    std::vector<double> minus(plus);
    for (double& x : minus) x = -x;
    points.push_back(std::move(plus));
    points.push_back(std::move(minus));
  }
  return points;
}

std::vector<std::string> preset_names() { return {"icosa3", "fibonacci"}; }

Preset preset(std::string_view name) {
  if (name == "icosa3") {
    ClusterSpec spec = ClusterSpec::canonical();
    EmbeddingMatrix b = build_embedding(spec);
    EngineConfig config;
    config.tr = broadcast_tr(0.1, b.super_dim());
    config.max_enqueued = 10000;
    return Preset{"icosa3", std::move(b), std::move(config), std::move(spec)};
  }
  if (name == "fibonacci") {
    EmbeddingMatrix b(1, {{1.0}, {golden_ratio()}});
    EngineConfig config;
    config.tr = {0.1, 0.1};
    config.max_enqueued = 200;
    return Preset{"fibonacci", std::move(b), std::move(config), std::nullopt};
  }
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

}  // namespace quasipack
