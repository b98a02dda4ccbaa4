#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quasipack/cluster_geometry.hpp"
#include "quasipack/lattice_enumerator.hpp"

namespace quasipack {

enum class OutputFormat { graphics3d, xyz, csv, json };

std::string_view to_string(OutputFormat format);
// Throws std::invalid_argument for an unknown name.
OutputFormat parse_format(std::string_view name);

enum class Command { generate, benchmark };

struct RunRequest {
  Command command = Command::generate;
  Preset setup;
  OutputFormat format = OutputFormat::graphics3d;
  std::optional<std::filesystem::path> out;  // stdout when unset
};

// Thrown for unusable command lines; what() is the diagnostic to print.
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses arguments (program name excluded). A help request yields no
// request and the help text instead.
struct ParseOutcome {
  std::optional<RunRequest> request;
  bool help_requested = false;
  std::string help_text;
};
ParseOutcome parse_cli(const std::vector<std::string>& args);

// Parses "0.1" (broadcast) or "0.1,0.2,..." (exactly super_dim values).
std::vector<double> parse_tr(std::string_view text, std::size_t super_dim);

struct RunMetadata {
  std::string preset;
  std::vector<double> radii;
  std::vector<double> tr;
  RunStats stats;
};

// Mathematica Graphics3D listing: fixed 10-wide, 5-decimal fields. Returns
// the number of bytes written. Throws std::invalid_argument for an empty list
// or points that are not 3-dimensional.
std::size_t write_graphics3d(const PointList& points, std::ostream& sink);
void write_xyz(const PointList& points, std::ostream& sink, std::string_view comment = "");
void write_csv(const PointList& points, std::ostream& sink);
void write_json(const PointList& points, const RunMetadata& meta, std::ostream& sink);
void write_points(OutputFormat format, const PointList& points, const RunMetadata& meta,
                  std::ostream& sink);

void report_stats(const RunStats& stats, std::ostream& sink);

struct PathTiming {
  double seconds = 0.0;
  RunStats stats;
  double points_per_second() const {
    return seconds > 0.0 ? static_cast<double>(stats.obtained) / seconds : 0.0;
  }
};

struct BenchmarkReport {
  PathTiming optimized;
  PathTiming naive;
  bool identical = false;
  double speedup() const { return optimized.seconds > 0.0 ? naive.seconds / optimized.seconds : 0.0; }
};

// Times the precomputed-cofactor engine against the listing-faithful one on
// the same embedding and config.
BenchmarkReport benchmark(const EmbeddingMatrix& b, const EngineConfig& config);
void report_benchmark(const BenchmarkReport& report, std::ostream& sink);

// Runs a parsed request: points go to request.out (or `out` when unset),
// diagnostics and counters to `log`. Returns the process exit code.
int execute(const RunRequest& request, std::ostream& out, std::ostream& log);

}  // namespace quasipack
