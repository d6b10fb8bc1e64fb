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

#ifndef WLIKE_SWEEP_IO_HPP
#define WLIKE_SWEEP_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wlike/protocols.hpp"

namespace wlike {

/// "start:stop:step" (inclusive) or a single value.
struct GridSpec {
  double start;
  double stop;
  double step;
};

GridSpec parse_grid(std::string_view text);
std::vector<double> expand_grid(const GridSpec& grid);
/// Integer grid; every point must be integral.
std::vector<int> expand_int_grid(const GridSpec& grid);

enum class SweepKind { filter, random };
enum class OutputFormat { csv, json, svg };

OutputFormat parse_format(std::string_view text);

/// 12 significant digits, "." separator.
std::string format_number(double x);

/// Filter:  N,D,epsilon,q,i_ab,i_ae,rate,rate_clamped
/// Random:  D,M,q,i_ab,i_ae,rate,rate_clamped
void write_sweep_csv(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows);
void write_sweep_json(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows);
/// Static heatmap of rate_clamped over (D, epsilon) or (D, M).
void write_sweep_svg(std::ostream& out, SweepKind kind, const std::vector<SweepRecord>& rows);
void write_sweep(std::ostream& out, OutputFormat format, SweepKind kind,
                 const std::vector<SweepRecord>& rows);

}  // namespace wlike

#endif  // WLIKE_SWEEP_IO_HPP
