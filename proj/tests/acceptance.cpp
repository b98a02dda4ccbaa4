// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "quasipack/cli_io.hpp"
#include "quasipack/reference_oracles.hpp"
#include "test_support.hpp"

using namespace quasipack;
namespace qt = quasipack::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const Preset& icosa3() {
  static const Preset p = preset("icosa3");
  return p;
}

const ConstraintSet& icosa3_constraints() {
  static const ConstraintSet cs = build_constraints(icosa3().embedding);
  return cs;
}

Verdict cluster_fidelity() {
  Verdict v;
  const EmbeddingMatrix& b = icosa3().embedding;
  v.require(b.super_dim() == 31, "31 columns");
  double worst = 0.0;
  for (std::size_t j = 0; j < b.super_dim(); ++j) {
    const double expected = j < 6 ? 1.0 : (j < 16 ? 1.2 : 1.5);
    double n2 = 0.0;
    for (double x : b.column(j)) n2 += x * x;
    worst = std::max(worst, std::abs(std::sqrt(n2) - expected));
  }
  v.require(worst <= 1e-12, "column norms within 1e-12");

  const RotationMatrix3 c5 = build_rotation_c5();
  const RotationMatrix3 gram = c5.transposed() * c5;
  const RotationMatrix3 fifth = c5 * c5 * c5 * c5 * c5;
  double orth = 0.0, order = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double id = i == j ? 1.0 : 0.0;
      orth = std::max(orth, std::abs(gram.entries[i][j] - id));
      order = std::max(order, std::abs(fifth.entries[i][j] - id));
    }
  }
  v.require(orth <= 1e-12, "C5 orthogonal");
  v.require(std::abs(c5.determinant() - 1.0) <= 1e-12, "det C5 = 1");
  v.require(order <= 1e-12, "C5^5 = I");
  v.note("max norm error " + fmt("%.2e", worst));
  return v;
}

Verdict facet_closed_form() {
  Verdict v;
  const EmbeddingMatrix& b = icosa3().embedding;
  std::size_t count = 0;
  double worst = 0.0;
  std::vector<std::size_t> idx(4);
  for (idx[0] = 0; idx[0] < 31; ++idx[0])
    for (idx[1] = idx[0] + 1; idx[1] < 31; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < 31; ++idx[2])
        for (idx[3] = idx[2] + 1; idx[3] < 31; ++idx[3]) {
          const auto cof = subset_cofactors(b, idx);
          const double closed = half_width(cof);
          const double corners = qt::corner_max(cof);
          const double scale = std::max(std::abs(closed), std::abs(corners));
          if (scale > 0) worst = std::max(worst, std::abs(closed - corners) / scale);
          ++count;
        }
  v.require(count == 31465, "31465 subsets");
  v.require(worst <= 1e-12, "relative agreement within 1e-12");
  v.note(std::to_string(count) + " subsets, worst relative gap " + fmt("%.2e", worst));
  return v;
}

Verdict annihilation() {
  Verdict v;
  const EmbeddingMatrix& b = icosa3().embedding;
  const ConstraintSet& cs = icosa3_constraints();
  double worst = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const StripConstraint c = cs[i];
    double scale = 0.0;
    for (double x : c.cofactors) scale += std::abs(x);
    for (std::size_t r = 0; r < 3; ++r) {
      double value = 0.0;
      for (std::size_t k = 0; k < c.indices.size(); ++k) value += c.cofactors[k] * b(r, c.indices[k]);
      worst = std::max(worst, std::abs(value) / scale);
    }
  }
  v.require(worst <= 1e-10, "relative residual <= 1e-10");
  v.note(std::to_string(cs.size()) + " constraints, worst " + fmt("%.2e", worst));
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  const auto t0 = Clock::now();
  const EmbeddingMatrix& b = icosa3().embedding;
  const ConstraintSet& cs = icosa3_constraints();
  const std::vector<double>& tr = icosa3().config.tr;

  std::vector<LatticePoint> samples;
  std::mt19937_64 rng(20240531);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int i = 0; i < 1000; ++i) {
    LatticePoint p(31);
    for (auto& c : p) c = coord(rng);
    samples.push_back(std::move(p));
  }
  // Uniform samples are almost all outside; add the accepted points of a
  // short run so both verdicts are exercised.
  EngineConfig short_run = icosa3().config;
  short_run.max_enqueued = 3000;
  const RunResult r = run(b, cs, short_run);
  samples.insert(samples.end(), r.accepted.begin(), r.accepted.end());

  std::size_t compared = 0, skipped = 0, mismatches = 0, inside = 0;
  std::vector<double> d(31);
  for (const LatticePoint& p : samples) {
    for (std::size_t j = 0; j < 31; ++j) d[j] = static_cast<double>(p[j]) - tr[j];
    const Membership m = classify(d, cs);
    if (m.on_boundary) {
      ++skipped;
      continue;
    }
    const auto lp = oracles::lp_strip_membership(b, d);
    ++compared;
    inside += m.inside();
    if (lp.feasible != m.inside()) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  v.require(compared >= 1000, ">= 1000 compared points");
  v.require(mismatches == 0, "100% agreement");
  v.require(elapsed < 60.0, "runtime < 60 s");
  v.note(std::to_string(compared) + " compared (" + std::to_string(inside) + " inside), " +
         std::to_string(skipped) + " boundary skipped, " + std::to_string(mismatches) +
         " mismatches, " + fmt("%.2f s", elapsed));
  return v;
}

Verdict reference_run() {
  Verdict v;
  const Preset& p = icosa3();
  v.require(p.config.max_enqueued == 10000, "N = 10000");

  const auto t0 = Clock::now();
  const ConstraintSet cs = build_constraints(p.embedding, p.config.degeneracy_tol);
  const RunResult r = run(p.embedding, cs, p.config);
  const double wall = seconds_since(t0);
  v.require(r.stats.obtained >= 400 && r.stats.obtained <= 500, "obtained in [400, 500]");
  v.require(wall <= 60.0, "wall time <= 60 s");

  const BenchmarkReport bench = benchmark(p.embedding, p.config);
  v.require(bench.identical, "benchmark paths emit identical point sets");
  v.require(bench.speedup() >= 10.0, "speedup >= 10x");
  v.note("obtained " + std::to_string(r.stats.obtained) + ", analysed " +
         std::to_string(r.stats.analysed) + ", boundary " + std::to_string(r.stats.boundary_points) +
         ", " + fmt("%.2f s", wall) + "; naive " + fmt("%.2f s", bench.naive.seconds) +
         ", optimized " + fmt("%.3f s", bench.optimized.seconds) + ", speedup " +
         fmt("%.1fx", bench.speedup()));
  return v;
}

Verdict fibonacci_structure() {
  Verdict v;
  const Preset fib = preset("fibonacci");
  const RunResult r = run(fib.embedding, build_constraints(fib.embedding), fib.config);
  const PointList pts = r.points.sorted();
  v.require(pts.size() >= 40, ">= 40 points");
  if (pts.size() < 2) return v;

  std::vector<double> gaps;
  for (std::size_t i = 1; i < pts.size(); ++i) gaps.push_back(pts[i][0] - pts[i - 1][0]);
  std::vector<double> lengths;
  for (double g : gaps) {
    if (std::none_of(lengths.begin(), lengths.end(),
                     [g](double l) { return std::abs(l - g) <= 1e-9; })) {
      lengths.push_back(g);
    }
  }
  v.require(lengths.size() == 2, "exactly two gap lengths");
  if (lengths.size() != 2) return v;
  std::sort(lengths.begin(), lengths.end());
  const double ratio = lengths[1] / lengths[0];
  v.require(std::abs(ratio - golden_ratio()) <= 1e-9, "gap ratio tau within 1e-9");

  std::string word;
  for (double g : gaps) word += std::abs(g - lengths[1]) <= 1e-9 ? 'L' : 'S';
  v.require(word.find("SS") == std::string::npos, "no SS factor");
  v.require(word.find("LLL") == std::string::npos, "no LLL factor");
  v.require(oracles::fibonacci_word(25).find(word) != std::string::npos,
            "gap word is a factor of the Fibonacci word");
  v.note(std::to_string(pts.size()) + " points, ratio " + fmt("%.12f", ratio));
  return v;
}

Verdict box_completeness() {
  Verdict v;
  {
    const Preset fib = preset("fibonacci");
    const ConstraintSet cs = build_constraints(fib.embedding);
    const RunResult r = run(fib.embedding, cs, fib.config);
    std::vector<LatticePoint> in_box;
    for (const auto& p : r.accepted) {
      if (std::abs(p[0]) <= 3 && std::abs(p[1]) <= 3) in_box.push_back(p);
    }
    const PointList bfs = qt::sorted_projection(fib.embedding, in_box, fib.config.tr, 1e-9);
    const PointList scan = oracles::box_scan(fib.embedding, cs, 3, fib.config.tr).sorted();
    v.require(bfs == scan, "fibonacci radius 3");
    v.note("fibonacci " + std::to_string(scan.size()) + " points");
  }
  {
    const EmbeddingMatrix oct = qt::octagonal_embedding();
    const ConstraintSet cs = build_constraints(oct);
    EngineConfig config;
    config.tr = {0.1, 0.23, -0.17, 0.31};
    config.max_enqueued = 20000;
    const RunResult r = run(oct, cs, config);
    std::vector<LatticePoint> in_box;
    for (const auto& p : r.accepted) {
      if (std::all_of(p.begin(), p.end(), [](auto c) { return std::abs(c) <= 2; })) {
        in_box.push_back(p);
      }
    }
    const PointList bfs = qt::sorted_projection(oct, in_box, config.tr, 1e-9);
    const PointList scan = oracles::box_scan(oct, cs, 2, config.tr).sorted();
    v.require(bfs == scan, "octagonal D=2 M=4 radius 2");
    v.note("octagonal " + std::to_string(scan.size()) + " points");
  }
  return v;
}

Verdict invariance_suite() {
  Verdict v;
  const Preset& p = icosa3();
  const ConstraintSet& cs = icosa3_constraints();

  // integer translation
  const RunResult base = run(p.embedding, cs, p.config);
  EngineConfig shifted = p.config;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> z(-3, 3);
  for (double& t : shifted.tr) t += z(rng);
  const RunResult moved = run(p.embedding, cs, shifted);
  v.require(qt::same_point_sets(base.points.sorted(), moved.points.sorted(), 1e-9),
            "integer-translation invariance");

  // scale invariance of classification
  std::size_t scale_mismatch = 0;
  std::uniform_int_distribution<int> coord(-1, 1);
  for (double lambda : {0.25, 3.0}) {
    const ConstraintSet scaled = build_constraints(p.embedding.scaled(lambda));
    std::vector<double> d(31);
    for (int trial = 0; trial < 500; ++trial) {
      for (double& x : d) x = coord(rng) - 0.1;
      scale_mismatch += classify(d, cs).status != classify(d, scaled).status;
    }
    for (const LatticePoint& q : base.accepted) {
      for (std::size_t j = 0; j < 31; ++j) d[j] = static_cast<double>(q[j]) - p.config.tr[j];
      scale_mismatch += classify(d, cs).status != classify(d, scaled).status;
    }
  }
  v.require(scale_mismatch == 0, "scale invariance under B -> lambda B");

  // inversion symmetry at tr = 0: the lattice box for Fibonacci, the first
  // BFS shell for icosa3
  bool symmetric = true;
  {
    const Preset fib = preset("fibonacci");
    EngineConfig config = fib.config;
    config.tr = {0.0, 0.0};
    const RunResult r = run(fib.embedding, build_constraints(fib.embedding), config);
    const PointList bfs_box = [&] {
      std::vector<LatticePoint> in_box;
      for (const auto& q : r.accepted) {
        if (std::abs(q[0]) <= 3 && std::abs(q[1]) <= 3) in_box.push_back(q);
      }
      return qt::sorted_projection(fib.embedding, in_box, config.tr, 1e-9);
    }();
    PointList negated = bfs_box;
    for (auto& x : negated) x[0] = -x[0];
    std::sort(negated.begin(), negated.end());
    symmetric &= qt::same_point_sets(bfs_box, negated, 1e-9);
  }
  {
    EngineConfig config = p.config;
    config.tr.assign(31, 0.0);
    config.max_enqueued = 63;
    const RunResult r = run(p.embedding, cs, config);
    const PointList pts = r.points.sorted();
    for (const auto& x : pts) {
      std::vector<double> neg{-x[0], -x[1], -x[2]};
      symmetric &= r.points.contains(neg);
    }
    symmetric &= pts.size() > 1;
  }
  v.require(symmetric, "inversion symmetry at tr = 0");

  // dedup separation
  double min_sep = INFINITY;
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    for (std::size_t j = i + 1; j < base.points.size(); ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        d = std::max(d, std::abs(base.points.point(i)[k] - base.points.point(j)[k]));
      }
      min_sep = std::min(min_sep, d);
    }
  }
  v.require(min_sep > p.config.dedup_tol, "min pairwise distance > dedup_tol");
  v.note("min separation " + fmt("%.4f", min_sep));
  return v;
}

Verdict writer_fidelity() {
  Verdict v;
  const PointList points{{0.1, -0.2, 0.33333}, {1.5, 0.0, 0.0}, {-12.345678, 3.0, -0.000001}};
  std::ostringstream out;
  write_graphics3d(points, out);
  std::ifstream golden_file(QUASIPACK_GOLDEN_DIR "/three_points.g3d", std::ios::binary);
  const std::string golden{std::istreambuf_iterator<char>(golden_file),
                           std::istreambuf_iterator<char>()};
  v.require(!golden.empty(), "golden file readable");
  v.require(out.str() == golden, "byte-exact graphics3d output");

  // the full icosa3 file is well formed
  const RunResult r = run(icosa3().embedding, icosa3_constraints(), icosa3().config);
  std::ostringstream full;
  write_graphics3d(r.points.sorted(), full);
  const std::string text = full.str();
  std::size_t points_seen = 0;
  for (std::size_t pos = 0; (pos = text.find("Point[{", pos)) != std::string::npos; ++pos) {
    ++points_seen;
  }
  int depth = 0;
  bool balanced = true;
  for (char ch : text) {
    if (ch == '[' || ch == '{') ++depth;
    if (ch == ']' || ch == '}') --depth;
    balanced &= depth >= 0;
  }
  v.require(balanced && depth == 0, "balanced brackets");
  v.require(points_seen == r.stats.obtained, "one Point[{ per obtained point");
  return v;
}

Verdict determinism() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "quasipack_acceptance";
  std::filesystem::create_directories(dir);
  std::string contents[2];
  int threads[2] = {1, 4};
  for (int i = 0; i < 2; ++i) {
    const auto path = dir / ("threads_" + std::to_string(threads[i]) + ".g3d");
    const ParseOutcome parsed =
        parse_cli({"--threads", std::to_string(threads[i]), "--out", path.string()});
    std::ostringstream sink, log;
    v.require(execute(*parsed.request, sink, log) == 0, "execute succeeds");
    std::ifstream in(path, std::ios::binary);
    contents[i].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  v.require(!contents[0].empty(), "non-empty output");
  v.require(contents[0] == contents[1], "byte-identical files for --threads 1 and 4");
  v.note(std::to_string(contents[0].size()) + " bytes");
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1  cluster fidelity", cluster_fidelity},
      {"2  facet closed form", facet_closed_form},
      {"3  annihilation", annihilation},
      {"4  oracle equivalence", oracle_equivalence},
      {"5  icosa3 reference run", reference_run},
      {"6  fibonacci structure", fibonacci_structure},
      {"7  box completeness", box_completeness},
      {"8  invariance suite", invariance_suite},
      {"9  writer fidelity", writer_fidelity},
      {"10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %-30s (%.2f s) %s\n", v.pass ? "PASS" : "FAIL", name, seconds_since(t0),
                v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
