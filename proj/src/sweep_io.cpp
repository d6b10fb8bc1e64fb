// Copyright 2026 The wlike Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wlike/sweep_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace wlike {

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

// Second axis of a sweep: epsilon for filter sweeps, M for random ones.
double second_axis(SweepKind kind, const SweepRecord& r) {
  return kind == SweepKind::filter ? r.epsilon : static_cast<double>(r.rounds);
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    const double v = parse_double(parts[0]);
    return {v, v, 1.0};
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("grid must be 'start:stop:step' or a single value, got '" +
                                std::string(text) + "'");
  }
  GridSpec g{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
  if (!(g.step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (g.stop < g.start) throw std::invalid_argument("grid stop must not precede start");
  return g;
}

std::vector<double> expand_grid(const GridSpec& grid) {
  const auto count = static_cast<long>(std::floor((grid.stop - grid.start) / grid.step + 1e-9)) + 1;
  if (count < 1) throw std::invalid_argument("grid is empty");
  if (count > 50'000'000) throw std::invalid_argument("grid has too many points");
  std::vector<double> out;
  out.reserve(count);
  for (long i = 0; i < count; ++i) out.push_back(std::min(grid.start + i * grid.step, grid.stop));
  return out;
}

std::vector<int> expand_int_grid(const GridSpec& grid) {
  std::vector<int> out;
  for (double v : expand_grid(grid)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw std::invalid_argument("integer grid has non-integral point");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "svg") return OutputFormat::svg;
  throw std::invalid_argument("format must be csv, json or svg");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write_sweep_csv(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows) {
  std::string buf;
  if (kind == SweepKind::filter) {
    buf += "N,D,epsilon,q,i_ab,i_ae,rate,rate_clamped\n";
  } else {
    buf += "D,M,q,i_ab,i_ae,rate,rate_clamped\n";
  }
  for (const auto& r : rows) {
    if (kind == SweepKind::filter) {
      buf += std::to_string(r.parties) + ',' + std::to_string(r.shield_dim) + ',' +
             format_number(r.epsilon);
    } else {
      buf += std::to_string(r.shield_dim) + ',' + std::to_string(r.rounds);
    }
    for (double v : {r.q, r.i_ab, r.i_ae, r.rate, r.rate_clamped()}) {
      buf += ',';
      buf += format_number(v);
    }
    buf += '\n';
  }
  out << buf;
}

void write_sweep_json(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    if (kind == SweepKind::filter) {
      o["N"] = r.parties;
      o["D"] = r.shield_dim;
      o["epsilon"] = r.epsilon;
    } else {
      o["D"] = r.shield_dim;
      o["M"] = r.rounds;
    }
    o["q"] = r.q;
    o["i_ab"] = r.i_ab;
    o["i_ae"] = r.i_ae;
    o["rate"] = r.rate;
    o["rate_clamped"] = r.rate_clamped();
    arr.push_back(std::move(o));
  }
  out << arr.dump(1) << '\n';
}

void write_sweep_svg(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows) {
  std::map<int, int> xs;
  std::map<double, int> ys;
  double peak = 0.0;
  for (const auto& r : rows) {
    xs.emplace(r.shield_dim, 0);
    ys.emplace(second_axis(kind, r), 0);
    peak = std::max(peak, r.rate_clamped());
  }
  int i = 0;
  for (auto& [k, v] : xs) v = i++;
  i = 0;
  for (auto& [k, v] : ys) v = i++;

  constexpr int kCell = 4;
  constexpr int kMargin = 50;
  const int width = kMargin * 2 + static_cast<int>(xs.size()) * kCell;
  const int height = kMargin * 2 + static_cast<int>(ys.size()) * kCell;
  const int ny = static_cast<int>(ys.size());

  std::string buf;
  buf += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  buf += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& r : rows) {
    const double t = peak > 0.0 ? r.rate_clamped() / peak : 0.0;
    const int shade = static_cast<int>(std::lround(255 * (1.0 - t)));
    const int x = kMargin + xs[r.shield_dim] * kCell;
    const int y = kMargin + (ny - 1 - ys[second_axis(kind, r)]) * kCell;
    buf += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
           std::to_string(kCell) + "\" height=\"" + std::to_string(kCell) + "\" fill=\"rgb(255," +
           std::to_string(shade) + "," + std::to_string(shade) + ")\"/>\n";
  }
  const char* ylabel = kind == SweepKind::filter ? "epsilon" : "M";
  buf += "<text x=\"" + std::to_string(width / 2) + "\" y=\"" + std::to_string(height - 15) +
         "\" font-size=\"12\" text-anchor=\"middle\">D</text>\n";
  buf += "<text x=\"15\" y=\"" + std::to_string(height / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + ylabel + "</text>\n";
  buf += "<text x=\"" + std::to_string(width / 2) +
         "\" y=\"20\" font-size=\"12\" text-anchor=\"middle\">max rate_clamped " +
         format_number(peak) + "</text>\n";
  buf += "</svg>\n";
  out << buf;
}

void write_sweep(std::ostream& out, OutputFormat format, SweepKind kind,
                 const std::vector<SweepRecord>& rows) {
  switch (format) {
    case OutputFormat::csv:
      write_sweep_csv(out, kind, rows);
      break;
    case OutputFormat::json:
      write_sweep_json(out, kind, rows);
      break;
    case OutputFormat::svg:
      write_sweep_svg(out, kind, rows);
      break;
  }
}

}  // namespace wlike
