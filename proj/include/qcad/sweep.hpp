// Copyright 2026 The qcad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parameter sweeps over (d, mu, p) grids, their JSON configuration, and the
// CSV / SVG outputs.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcad/protection.hpp"
#include "qcad/states.hpp"

namespace qcad {

/// `steps` evenly spaced points from min to max inclusive; a single point at
/// min when steps == 1.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  static Axis point(double v) { return {v, v, 1}; }
  std::vector<double> values() const;
};

enum class Scheme { None, Wm, Eam, Compare };

std::string_view to_string(Scheme s) noexcept;

enum class OutputFormat { Csv, CsvSvg };

struct QPolicy {
  bool equal_p = true;
  double fixed = 0.0;
};

struct QmrPolicy {
  bool optimal = true;
  ReversalStrengths fixed;
};

/// With d1 and d2 unlocked, an axis named d means d1.
struct HeatmapSpec {
  std::string x = "d";
  std::string y = "mu";
  std::string value = "negativity";
};

struct SweepConfig {
  std::vector<StateClass> classes{StateClass::Class1};
  StateAmplitudes amplitudes = StateAmplitudes::balanced();
  Scheme scheme = Scheme::None;
  /// When true d1 = d2 = d and only `d` is swept.
  bool lock_d = true;
  Axis d{0.0, 1.0, 51};
  Axis d1{0.0, 1.0, 51};
  Axis d2{0.0, 1.0, 51};
  Axis mu{0.0, 1.0, 11};
  /// Swept only by the wm and compare schemes.
  Axis p = Axis::point(0.9);
  QPolicy q_policy;
  QmrPolicy qmr_policy;
  EamWeighting eam_weighting = EamWeighting::Joint;
  std::string output = "sweep.csv";
  OutputFormat format = OutputFormat::Csv;
  HeatmapSpec heatmap;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Parses a JSON configuration and applies `key=value` overrides on top of
/// it before validation. Keys are dotted paths into the document
/// (`grid.mu.steps=3`); the axis names d, d1, d2, mu, p are accepted as
/// shorthands for grid.<name>, and a scalar assigned to an axis pins it to a
/// single point. Throws ParseError (malformed JSON, wrong type, unknown key;
/// message carries the field path) or ValidationError (every violated
/// constraint, one per line).
SweepConfig parse_config(std::string_view json,
                         std::span<const std::string> overrides = {});

struct SweepRecord {
  StateClass state_class = StateClass::Class1;
  double d1 = 0.0;
  double d2 = 0.0;
  double mu = 0.0;
  double p = 0.0;
  double q = 0.0;
  double p_r = 0.0;
  double q_r = 0.0;
  /// none, wm or eam; never compare.
  Scheme scheme = Scheme::None;
  /// Empty when the protocol had zero success probability.
  std::optional<double> negativity;
  std::optional<double> probability;

  bool operator==(const SweepRecord&) const = default;
};

struct PointResult {
  SweepRecord record;
  std::optional<ComplexMatrix> state;
};

/// Evaluates one grid point of a given scheme (not Compare).
PointResult evaluate_point(const SweepConfig& cfg, StateClass cls, double d1,
                           double d2, double mu, double p, Scheme scheme);

/// Cartesian product in the order class, d (or d1, d2), mu, p; compare emits
/// a wm row followed by an eam row for every point. The row order does not
/// depend on the thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// The first grid point of the sweep with its output states.
std::vector<PointResult> evolve_first_point(const SweepConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "state_class,d1,d2,mu,p,q,p_r,q_r,scheme,negativity,probability";

void write_csv(std::ostream& os, std::span<const SweepRecord> records);
void emit_csv(const std::string& path, std::span<const SweepRecord> records);
/// Inverse of write_csv. Throws ParseError on malformed rows.
std::vector<SweepRecord> read_csv(std::istream& is);

/// Value of a named column: d, d1, d2, mu, p, q, p_r, q_r, negativity,
/// probability. Throws InvalidArgument for other names.
std::optional<double> record_field(const SweepRecord& r, std::string_view name);

/// One colored cell per (x, y) grid point with a linear scale over
/// [0, max]. Throws IncompleteGrid when a grid point is missing or repeated.
std::string render_svg_heatmap(std::span<const SweepRecord> records,
                               std::string_view x_axis, std::string_view y_axis,
                               std::string_view value_column,
                               std::string_view title = {});
void emit_svg_heatmap(const std::string& path,
                      std::span<const SweepRecord> records,
                      std::string_view x_axis, std::string_view y_axis,
                      std::string_view value_column,
                      std::string_view title = {});

/// Writes the CSV to `csv_path` and, for OutputFormat::CsvSvg, one heatmap
/// per (class, scheme, remaining axes) group next to it. Returns the paths
/// written.
std::vector<std::string> write_outputs(const SweepConfig& cfg,
                                       std::span<const SweepRecord> records,
                                       const std::string& csv_path);

}  // namespace qcad
