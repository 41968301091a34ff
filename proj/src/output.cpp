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

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "qcad/error.hpp"
#include "qcad/sweep.hpp"

namespace qcad {

namespace {

std::string fmt(const char* spec, double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string num12(double v) { return fmt("%.12g", v); }

std::string opt12(const std::optional<double>& v) {
  return v ? num12(*v) : std::string();
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw Error(ErrorCode::IoError,
                "cannot open " + path + " for writing: " + std::strerror(errno));
  }
  return os;
}

void finish_write(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line, const char* col) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::ParseError, "csv line " + std::to_string(line) +
                                           ": bad number in column " + col);
  }
  return v;
}

// Piecewise-linear approximation of the viridis map.
std::string color_for(double t) {
  static constexpr std::array<std::array<double, 3>, 5> kStops{{
      {68, 1, 84},
      {59, 82, 139},
      {33, 145, 140},
      {94, 201, 98},
      {253, 231, 37},
  }};
  t = std::clamp(t, 0.0, 1.0);
  const double x = t * (kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(x),
                                               kStops.size() - 2);
  const double f = x - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(
        std::lround(kStops[i][c] + f * (kStops[i + 1][c] - kStops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << to_string(r.state_class) << ',' << num12(r.d1) << ',' << num12(r.d2)
       << ',' << num12(r.mu) << ',' << num12(r.p) << ',' << num12(r.q) << ','
       << num12(r.p_r) << ',' << num12(r.q_r) << ',' << to_string(r.scheme)
       << ',' << opt12(r.negativity) << ',' << opt12(r.probability) << '\n';
  }
}

void emit_csv(const std::string& path, std::span<const SweepRecord> records) {
  std::ofstream os = open_for_write(path);
  write_csv(os, records);
  finish_write(os, path);
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw Error(ErrorCode::ParseError, "csv: missing or unexpected header");
  }
  std::vector<SweepRecord> out;
  for (std::size_t n = 2; std::getline(is, line); ++n) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 11) {
      throw Error(ErrorCode::ParseError, "csv line " + std::to_string(n) +
                                             ": expected 11 fields");
    }
    SweepRecord r;
    if (cells[0] == "class1") r.state_class = StateClass::Class1;
    else if (cells[0] == "class2") r.state_class = StateClass::Class2;
    else throw Error(ErrorCode::ParseError, "csv line " + std::to_string(n) + ": bad state_class");
    r.d1 = parse_double(cells[1], n, "d1");
    r.d2 = parse_double(cells[2], n, "d2");
    r.mu = parse_double(cells[3], n, "mu");
    r.p = parse_double(cells[4], n, "p");
    r.q = parse_double(cells[5], n, "q");
    r.p_r = parse_double(cells[6], n, "p_r");
    r.q_r = parse_double(cells[7], n, "q_r");
    if (cells[8] == "none") r.scheme = Scheme::None;
    else if (cells[8] == "wm") r.scheme = Scheme::Wm;
    else if (cells[8] == "eam") r.scheme = Scheme::Eam;
    else throw Error(ErrorCode::ParseError, "csv line " + std::to_string(n) + ": bad scheme");
    if (!cells[9].empty()) r.negativity = parse_double(cells[9], n, "negativity");
    if (!cells[10].empty()) r.probability = parse_double(cells[10], n, "probability");
    out.push_back(r);
  }
  return out;
}

std::string render_svg_heatmap(std::span<const SweepRecord> records,
                               std::string_view x_axis, std::string_view y_axis,
                               std::string_view value_column,
                               std::string_view title) {
  if (records.empty()) {
    throw Error(ErrorCode::IncompleteGrid, "heatmap: no records");
  }
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    xs.push_back(*record_field(r, x_axis));
    ys.push_back(*record_field(r, y_axis));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const auto index_of = [](const std::vector<double>& v, double x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  std::vector<const SweepRecord*> cells(xs.size() * ys.size(), nullptr);
  for (const auto& r : records) {
    const std::size_t ix = index_of(xs, *record_field(r, x_axis));
    const std::size_t iy = index_of(ys, *record_field(r, y_axis));
    const SweepRecord*& slot = cells[iy * xs.size() + ix];
    if (slot) {
      throw Error(ErrorCode::IncompleteGrid,
                  "heatmap: repeated grid point (" + num12(xs[ix]) + ", " +
                      num12(ys[iy]) + ")");
    }
    slot = &r;
  }
  double vmax = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!cells[k]) {
      throw Error(ErrorCode::IncompleteGrid,
                  "heatmap: missing grid point (" + num12(xs[k % xs.size()]) +
                      ", " + num12(ys[k / xs.size()]) + ")");
    }
    if (auto v = record_field(*cells[k], value_column)) vmax = std::max(vmax, *v);
  }

  constexpr double kLeft = 70, kTop = 40, kPlotW = 420, kPlotH = 300;
  constexpr double kBarX = kLeft + kPlotW + 30, kBarW = 18;
  constexpr double kWidth = kBarX + kBarW + 70, kHeight = kTop + kPlotH + 60;
  constexpr int kBarSteps = 32;
  const double cw = kPlotW / static_cast<double>(xs.size());
  const double ch = kPlotH / static_cast<double>(ys.size());

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%g", kWidth)
    << "\" height=\"" << fmt("%g", kHeight) << "\" font-family=\"sans-serif\" "
    << "font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    s << "<text x=\"" << fmt("%g", kLeft + kPlotW / 2) << "\" y=\"22\" "
      << "text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
      << "</text>\n";
  }
  s << "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const SweepRecord& r = *cells[iy * xs.size() + ix];
      const auto v = record_field(r, value_column);
      const std::string fill =
          v ? color_for(vmax > 0.0 ? *v / vmax : 0.0) : std::string("#bdbdbd");
      // Row 0 sits at the bottom so y grows upward.
      const double y = kTop + kPlotH - static_cast<double>(iy + 1) * ch;
      s << "<rect x=\"" << fmt("%.4f", kLeft + static_cast<double>(ix) * cw)
        << "\" y=\"" << fmt("%.4f", y) << "\" width=\"" << fmt("%.4f", cw)
        << "\" height=\"" << fmt("%.4f", ch) << "\" fill=\"" << fill
        << "\" data-x=\"" << num12(xs[ix]) << "\" data-y=\"" << num12(ys[iy])
        << "\" data-value=\"" << (v ? num12(*v) : std::string()) << "\"/>\n";
    }
  }
  s << "</g>\n";

  // Axes with end ticks.
  s << "<rect x=\"" << fmt("%g", kLeft) << "\" y=\"" << fmt("%g", kTop)
    << "\" width=\"" << fmt("%g", kPlotW) << "\" height=\"" << fmt("%g", kPlotH)
    << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  const double x_label_y = kTop + kPlotH + 18;
  s << "<text x=\"" << fmt("%g", kLeft) << "\" y=\"" << fmt("%g", x_label_y)
    << "\" text-anchor=\"start\">" << num12(xs.front()) << "</text>\n";
  s << "<text x=\"" << fmt("%g", kLeft + kPlotW) << "\" y=\"" << fmt("%g", x_label_y)
    << "\" text-anchor=\"end\">" << num12(xs.back()) << "</text>\n";
  s << "<text class=\"x-label\" x=\"" << fmt("%g", kLeft + kPlotW / 2) << "\" y=\""
    << fmt("%g", x_label_y + 22) << "\" text-anchor=\"middle\">"
    << xml_escape(x_axis) << "</text>\n";
  s << "<text x=\"" << fmt("%g", kLeft - 6) << "\" y=\"" << fmt("%g", kTop + kPlotH)
    << "\" text-anchor=\"end\">" << num12(ys.front()) << "</text>\n";
  s << "<text x=\"" << fmt("%g", kLeft - 6) << "\" y=\"" << fmt("%g", kTop + 10)
    << "\" text-anchor=\"end\">" << num12(ys.back()) << "</text>\n";
  s << "<text class=\"y-label\" x=\"" << fmt("%g", kLeft - 40) << "\" y=\""
    << fmt("%g", kTop + kPlotH / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
    << fmt("%g", kLeft - 40) << ' ' << fmt("%g", kTop + kPlotH / 2) << ")\">"
    << xml_escape(y_axis) << "</text>\n";

  // Scale bar from 0 (bottom) to vmax (top).
  s << "<g class=\"scale\">\n";
  const double sh = kPlotH / kBarSteps;
  for (int k = 0; k < kBarSteps; ++k) {
    const double t = (k + 0.5) / kBarSteps;
    s << "<rect x=\"" << fmt("%g", kBarX) << "\" y=\""
      << fmt("%.4f", kTop + kPlotH - (k + 1) * sh) << "\" width=\""
      << fmt("%g", kBarW) << "\" height=\"" << fmt("%.4f", sh) << "\" fill=\""
      << color_for(t) << "\"/>\n";
  }
  s << "<text x=\"" << fmt("%g", kBarX + kBarW + 4) << "\" y=\""
    << fmt("%g", kTop + kPlotH) << "\">0</text>\n";
  s << "<text x=\"" << fmt("%g", kBarX + kBarW + 4) << "\" y=\""
    << fmt("%g", kTop + 10) << "\">" << num12(vmax) << "</text>\n";
  s << "<text x=\"" << fmt("%g", kBarX + kBarW / 2) << "\" y=\""
    << fmt("%g", kTop - 8) << "\" text-anchor=\"middle\">"
    << xml_escape(value_column) << "</text>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

void emit_svg_heatmap(const std::string& path,
                      std::span<const SweepRecord> records,
                      std::string_view x_axis, std::string_view y_axis,
                      std::string_view value_column, std::string_view title) {
  const std::string svg =
      render_svg_heatmap(records, x_axis, y_axis, value_column, title);
  std::ofstream os = open_for_write(path);
  os << svg;
  finish_write(os, path);
}

std::vector<std::string> write_outputs(const SweepConfig& cfg,
                                       std::span<const SweepRecord> records,
                                       const std::string& csv_path) {
  std::vector<std::string> written;
  emit_csv(csv_path, records);
  written.push_back(csv_path);
  if (cfg.format != OutputFormat::CsvSvg || records.empty()) return written;

  const auto canonical = [&](const std::string& a) {
    return (cfg.lock_d && a == "d1") ? std::string("d") : a;
  };
  const std::string x = canonical(cfg.heatmap.x), y = canonical(cfg.heatmap.y);
  std::vector<std::string> grouping;
  for (const char* a : {"d", "d1", "d2", "mu", "p"}) {
    const std::string axis = a;
    const bool exists = cfg.lock_d ? (axis == "d" || axis == "mu" || axis == "p")
                                   : (axis != "d");
    if (exists && axis != x && axis != y) grouping.push_back(axis);
  }

  // Group key: class, scheme, then the values of the non-plotted axes.
  std::map<std::string, std::vector<SweepRecord>> groups;
  for (const auto& r : records) {
    std::string key = std::string(to_string(r.state_class)) + "_" +
                      std::string(to_string(r.scheme));
    for (const auto& axis : grouping) {
      // Only the wm scheme depends on p.
      if (axis == "p" && r.scheme != Scheme::Wm) continue;
      // Axes pinned to one point carry no information in the name.
      const Axis& a = axis == "d" ? cfg.d
                      : axis == "d1" ? cfg.d1
                      : axis == "d2" ? cfg.d2
                      : axis == "mu" ? cfg.mu
                                     : cfg.p;
      if (a.steps > 1) key += "_" + axis + num12(*record_field(r, axis));
    }
    auto& rows = groups[key];
    // compare repeats the eam row for every p.
    if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
  }

  const std::filesystem::path base(csv_path);
  const std::string stem = base.stem().string();
  for (const auto& [key, rows] : groups) {
    const std::filesystem::path svg_path =
        base.parent_path() / (stem + "_" + key + "_" + cfg.heatmap.value + ".svg");
    emit_svg_heatmap(svg_path.string(), rows, x, y, cfg.heatmap.value,
                     key + " " + cfg.heatmap.value);
    written.push_back(svg_path.string());
  }
  return written;
}

}  // namespace qcad
