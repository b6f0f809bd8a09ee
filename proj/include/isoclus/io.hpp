#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoclus/geom.hpp"

namespace isoclus {

// Geometry JSON. A region is one of
//   {"polygon": [[x, y], ...]}
//   {"square": {"center": [x, y], "side": s}}
//   {"rectangle": {"lo": [x, y], "hi": [x, y]}}
//   {"loops": [{"vertices": [[x, y], ...]} | {"edges": [{"from": p, "to": q[, "center": c, "sweep": s]}, ...]}]}
// (vertex and edge loops keep their orientation; clockwise loops are holes)
// and a cluster is {"chambers": [region, ...], "ambient"?: region, "torus"?: {"alpha": a, "beta": b}}.
// Syntax errors report line and column; structural errors report the JSON pointer of the field.

Region parse_region(std::string_view text);
Cluster parse_cluster(std::string_view text);
Region load_region(const std::filesystem::path& path);
Cluster load_cluster(const std::filesystem::path& path);
std::string region_to_json(const Region& r);
std::string cluster_to_json(const Cluster& c);

/// 12 significant digits, shortest form.
std::string csv_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string(bool with_header) const;
};

/// Appends the rows with one write under an exclusive lock; the header is
/// written only when the file is empty, and must match the existing one otherwise.
void append_csv(const std::filesystem::path& path, const CsvTable& table);

/// Standalone SVG: y axis up, viewBox = ambient (or torus domain, or chamber) box
/// plus a 5% margin, one filled path per chamber, arcs as path arcs.
std::string render_svg(const Cluster& c);

struct ExperimentConfig {
  /// Group and subcommand, e.g. {"construct", "surgery"}.
  std::vector<std::string> command;
  /// Named input files; all are checked for existence before running.
  std::map<std::string, std::filesystem::path> inputs;
  /// Named parameters as given on the command line.
  std::map<std::string, std::string> params;
  std::uint64_t seed = 42;
  std::filesystem::path out_dir = ".";
  bool emit_svg = false;
  /// Defaults to <out_dir>/<group>_<subcommand>.csv.
  std::optional<std::filesystem::path> csv;
  /// 0 means ISOCLUS_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

struct RunOutput {
  int status = 0;
  CsvTable table;
  std::filesystem::path csv_path;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one experiment, appends its CSV rows and writes JSON/SVG artifacts.
/// Library errors propagate; unknown commands and bad parameters throw DomainError.
RunOutput run(const ExperimentConfig& config);

/// Worker count from ISOCLUS_THREADS, else the hardware concurrency, at least 1.
unsigned worker_count(unsigned requested = 0);

}  // namespace isoclus
