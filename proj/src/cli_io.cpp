#include "quasipack/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "quasipack/listing_engine.hpp"
#include "quasipack/strip_engine.hpp"

namespace quasipack {

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::graphics3d: return "graphics3d";
    case OutputFormat::xyz: return "xyz";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "unknown";
}

OutputFormat parse_format(std::string_view name) {
  for (OutputFormat f : {OutputFormat::graphics3d, OutputFormat::xyz, OutputFormat::csv,
                         OutputFormat::json}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

std::vector<double> parse_tr(std::string_view text, std::size_t super_dim) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string field(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    field.erase(0, field.find_first_not_of(" \t"));
    field.erase(field.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (field.empty() || used != field.size() || !std::isfinite(value)) {
      throw std::invalid_argument("--tr: cannot parse '" + field + "' as a number");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (values.size() == 1) return broadcast_tr(values.front(), super_dim);
  if (values.size() != super_dim) {
    throw std::invalid_argument("--tr: got " + std::to_string(values.size()) +
                                " components, the superspace has " + std::to_string(super_dim));
  }
  return values;
}

ParseOutcome parse_cli(const std::vector<std::string>& args) {
  CLI::App app{"Quasiperiodic point sets by the strip projection method", "quasipack"};
  app.require_subcommand(0, 1);
  CLI::App* generate = app.add_subcommand("generate", "generate a point set (default)");
  CLI::App* bench = app.add_subcommand("bench", "time the optimized engine against the naive one");
  generate->fallthrough();
  bench->fallthrough();

  std::string preset_name = "icosa3";
  double r1 = 1.0, r2 = 1.2, r3 = 1.5;
  std::string tr_text;
  std::size_t max_points = 0;
  double boundary_tol = 0.0, dedup_tol = 0.0;
  std::string format_name;
  std::string out_path;
  unsigned threads = 1;

  app.add_option("--preset", preset_name, "icosa3 | fibonacci")->capture_default_str();
  auto* o_r1 = app.add_option("--r1", r1, "icosahedron shell radius (default 1.0)");
  auto* o_r2 = app.add_option("--r2", r2, "dodecahedron shell radius (default 1.2)");
  auto* o_r3 = app.add_option("--r3", r3, "icosidodecahedron shell radius (default 1.5)");
  auto* o_tr = app.add_option("--tr", tr_text, "strip translation: one value or M comma-separated values");
  auto* o_max = app.add_option("--max-points", max_points, "enqueue budget (default 10000 for icosa3)");
  auto* o_btol = app.add_option("--boundary-tol", boundary_tol, "relative facet tolerance");
  auto* o_dtol = app.add_option("--dedup-tol", dedup_tol, "absolute duplicate tolerance");
  auto* o_fmt = app.add_option("--format", format_name, "graphics3d | xyz | csv | json");
  auto* o_out = app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--threads", threads, "worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, true, app.help()};
  } catch (const CLI::ParseError& e) {
    throw CliError(e.what());
  }

  try {
    const bool radii_given = o_r1->count() + o_r2->count() + o_r3->count() > 0;
    Preset setup = preset(preset_name);
    if (radii_given) {
      if (!setup.spec) {
        throw CliError("--r1/--r2/--r3 only apply to cluster presets, not '" + preset_name + "'");
      }
      for (double r : {r1, r2, r3}) {
        if (!(r > 0.0)) throw CliError("shell radii must be positive");
      }
      setup.spec = ClusterSpec::canonical(r1, r2, r3);
      setup.embedding = build_embedding(*setup.spec);
    }

    EngineConfig& config = setup.config;
    const std::size_t m = setup.embedding.super_dim();
    if (o_tr->count()) config.tr = parse_tr(tr_text, m);
    if (o_max->count()) config.max_enqueued = max_points;
    if (o_btol->count()) config.boundary_tol = boundary_tol;
    if (o_dtol->count()) config.dedup_tol = dedup_tol;
    if (threads == 0) throw CliError("--threads must be at least 1");
    config.threads = threads;
    config.validate(m);

    RunRequest request{bench->parsed() ? Command::benchmark : Command::generate, std::move(setup),
                       OutputFormat::graphics3d, std::nullopt};
    if (o_fmt->count()) {
      request.format = parse_format(format_name);
    } else if (request.setup.embedding.phys_dim() != 3) {
      request.format = OutputFormat::csv;
    }
    if (request.format == OutputFormat::graphics3d && request.setup.embedding.phys_dim() != 3) {
      throw CliError("graphics3d output needs a 3-dimensional physical space");
    }
    if (o_out->count()) request.out = out_path;
    return {std::move(request), false, {}};
  } catch (const CliError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
}

namespace {

// Fortran Fw.d: right-justified in w columns, asterisks on overflow.
std::string fortran_fixed(double value, int width, int decimals) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%*.*f", width, decimals, value);
  if (n < 0 || n > width) return std::string(static_cast<std::size_t>(width), '*');
  return std::string(buf, static_cast<std::size_t>(n));
}

void check_sink(std::ostream& sink) {
  if (!sink) throw std::runtime_error("write failed");
}

std::size_t point_dim(const PointList& points) {
  return points.empty() ? 0 : points.front().size();
}

}  // namespace

std::size_t write_graphics3d(const PointList& points, std::ostream& sink) {
  if (points.empty()) throw std::invalid_argument("graphics3d: no points to write");
  std::string text = "Show[Graphics3D[{ PointSize[0.01],{\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.size() != 3) throw std::invalid_argument("graphics3d: points must be 3-dimensional");
    text += "Point[{";
    text += fortran_fixed(p[0], 10, 5);
    text += ',';
    text += fortran_fixed(p[1], 10, 5);
    text += ',';
    text += fortran_fixed(p[2], 10, 5);
    text += (i + 1 < points.size()) ? "}], \n" : "}]\n";
  }
  text += "}} ]]\n";
  sink << text;
  check_sink(sink);
  return text.size();
}

void write_xyz(const PointList& points, std::ostream& sink, std::string_view comment) {
  sink << points.size() << '\n' << comment << '\n';
  char buf[32];
  for (const auto& p : points) {
    sink << 'Q';
    for (std::size_t r = 0; r < 3; ++r) {
      std::snprintf(buf, sizeof buf, "%.17g", r < p.size() ? p[r] : 0.0);
      sink << ' ' << buf;
    }
    sink << '\n';
  }
  check_sink(sink);
}

void write_csv(const PointList& points, std::ostream& sink) {
  static constexpr const char* kHeaders[] = {"x", "x,y", "x,y,z"};
  const std::size_t dim = std::max<std::size_t>(1, point_dim(points));
  if (dim > 3) throw std::invalid_argument("csv: at most 3 coordinates");
  sink << kHeaders[dim - 1] << '\n';
  char buf[32];
  for (const auto& p : points) {
    for (std::size_t r = 0; r < p.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%.17g", p[r]);
      if (r) sink << ',';
      sink << buf;
    }
    sink << '\n';
  }
  check_sink(sink);
}

void write_json(const PointList& points, const RunMetadata& meta, std::ostream& sink) {
  nlohmann::json doc;
  doc["preset"] = meta.preset;
  doc["radii"] = meta.radii;
  doc["tr"] = meta.tr;
  doc["stats"] = {{"analysed", meta.stats.analysed},
                  {"obtained", meta.stats.obtained},
                  {"boundary_points", meta.stats.boundary_points}};
  doc["phys_dim"] = point_dim(points);
  doc["points"] = points;
  sink << doc.dump(1) << '\n';
  check_sink(sink);
}

void write_points(OutputFormat format, const PointList& points, const RunMetadata& meta,
                  std::ostream& sink) {
  switch (format) {
    case OutputFormat::graphics3d: write_graphics3d(points, sink); return;
    case OutputFormat::xyz:
      write_xyz(points, sink, "quasipack " + meta.preset + " obtained=" +
                                  std::to_string(meta.stats.obtained));
      return;
    case OutputFormat::csv: write_csv(points, sink); return;
    case OutputFormat::json: write_json(points, meta, sink); return;
  }
}

void report_stats(const RunStats& stats, std::ostream& sink) {
  sink << "NUMBER OF ANALYSED POINTS : " << stats.analysed << '\n'
       << "NUMBER OF OBTAINED POINTS : " << stats.obtained << '\n'
       << "NUMBER OF POINTS LYING ON THE FRONTIER OF THE STRIP : " << stats.boundary_points
       << '\n';
  if (stats.obtained == 0) {
    sink << "notice: empty output, no lattice point was accepted\n";
  }
  if (stats.boundary_points > 0) {
    sink << "warning: " << stats.boundary_points
         << " points lie on a strip facet (singular translation); consider perturbing --tr\n";
  }
}

BenchmarkReport benchmark(const EmbeddingMatrix& b, const EngineConfig& config) {
  using clock = std::chrono::steady_clock;
  BenchmarkReport report;

  const auto t0 = clock::now();
  const ConstraintSet cs = build_constraints(b, config.degeneracy_tol, config.threads);
  const RunResult fast = run(b, cs, config);
  const auto t1 = clock::now();
  const RunResult slow = run_listing_faithful(b, config);
  const auto t2 = clock::now();

  report.optimized = {std::chrono::duration<double>(t1 - t0).count(), fast.stats};
  report.naive = {std::chrono::duration<double>(t2 - t1).count(), slow.stats};
  report.identical = fast.points.sorted() == slow.points.sorted();
  return report;
}

void report_benchmark(const BenchmarkReport& report, std::ostream& sink) {
  char line[160];
  auto path = [&](const char* name, const PathTiming& t) {
    std::snprintf(line, sizeof line,
                  "%-10s time %10.4f s  points/s %12.2f  analysed %zu  obtained %zu  boundary %zu\n",
                  name, t.seconds, t.points_per_second(), t.stats.analysed, t.stats.obtained,
                  t.stats.boundary_points);
    sink << line;
  };
  path("optimized", report.optimized);
  path("naive", report.naive);
  std::snprintf(line, sizeof line, "speedup    %.2fx\n", report.speedup());
  sink << line << "identical point sets: " << (report.identical ? "yes" : "NO") << '\n';
}

int execute(const RunRequest& request, std::ostream& out, std::ostream& log) {
  const Preset& setup = request.setup;
  if (request.command == Command::benchmark) {
    const BenchmarkReport report = benchmark(setup.embedding, setup.config);
    report_benchmark(report, log);
    return report.identical ? 0 : 1;
  }

  const ConstraintSet cs =
      build_constraints(setup.embedding, setup.config.degeneracy_tol, setup.config.threads);
  const RunResult result = run(setup.embedding, cs, setup.config);

  RunMetadata meta{setup.name, {}, setup.config.tr, result.stats};
  if (setup.spec) {
    for (const Shell& s : setup.spec->shells) meta.radii.push_back(s.radius);
  }
  const PointList points = result.points.sorted();

  report_stats(result.stats, log);
  if (points.empty() && request.format == OutputFormat::graphics3d) {
    log << "error: graphics3d needs at least one point\n";
    return 1;
  }
  if (request.out) {
    std::ofstream file(*request.out, std::ios::binary);
    if (!file) {
      log << "error: cannot open " << request.out->string() << " for writing\n";
      return 1;
    }
    write_points(request.format, points, meta, file);
  } else {
    write_points(request.format, points, meta, out);
  }
  return 0;
}

}  // namespace quasipack
