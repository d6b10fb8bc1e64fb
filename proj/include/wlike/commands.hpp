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

#ifndef WLIKE_COMMANDS_HPP
#define WLIKE_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlike/operator.hpp"
#include "wlike/state_family.hpp"
#include "wlike/sweep_io.hpp"

namespace wlike {

/// Process exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct RunConfig {
  std::string command;
  int parties = 3;
  int shield_dim = 2;
  int rounds = 100;
  std::optional<int> party;
  std::pair<int, int> pair{1, 2};
  std::optional<std::string> d_grid;
  std::optional<std::string> eps_grid;
  std::optional<std::string> m_grid;
  std::optional<std::string> unitary_path;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::csv;
  double tol = kEigenTolerance;
  std::string state = "family";  // ppt-check input: family | w
  std::string mode = "both";     // thresholds: random | filter | both
  std::vector<double> rates;     // multikey
  int threads = 1;
  Eigen::Index side_limit = kDefaultSideLimit;
};

/// Family parameters from --n/--d and an optional --unitary file.
StateFamilyParams family_params_from(const RunConfig& config);

int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_ppt_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep_filter(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep_random(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_thresholds(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Numeric privacy-squeezed state of --pair next to the closed form.
int cmd_squeeze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_multikey(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps exceptions to exit codes.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wlike

#endif  // WLIKE_COMMANDS_HPP
