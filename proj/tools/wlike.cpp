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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wlike/commands.hpp"

namespace {

struct Flags {
  std::string format = "csv";
  std::string pair = "1,2";
  std::string rates;
  long long side_limit = wlike::kDefaultSideLimit;
};

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W-like bound entangled states: construction, PPT checks and key-rate sweeps"};
  app.require_subcommand(1);

  wlike::RunConfig config;
  Flags flags;

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--n", config.parties, "Number of parties N")->capture_default_str();
    sub->add_option("--d", config.shield_dim, "Shield factor dimension D")->capture_default_str();
    sub->add_option("--unitary", config.unitary_path, "JSON file with a Hermitian unitary {\"d\",\"re\",\"im\"}");
    sub->add_option("--size-limit", flags.side_limit, "Largest dense matrix side to build")
        ->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", config.out_path, "Output path (default: stdout)");
    sub->add_option("--format", flags.format, "csv | json | svg")->capture_default_str();
    sub->add_option("--threads", config.threads, "Worker threads for grid evaluation")
        ->capture_default_str();
  };

  auto* construct = app.add_subcommand("construct", "Build the state and dump it as operator JSON");
  add_family(construct);
  construct->add_option("--out", config.out_path, "Output path (default: stdout)");

  auto* ppt = app.add_subcommand("ppt-check", "Partial-transpose positivity for every single-party cut");
  add_family(ppt);
  ppt->add_option("--party", config.party, "Check only this party (1-based)");
  ppt->add_option("--state", config.state, "family | w")->capture_default_str();
  ppt->add_option("--tol", config.tol, "Eigenvalue tolerance")->capture_default_str();

  auto* sweep_filter = app.add_subcommand("sweep-filter", "Filtering key rate over (D, epsilon)");
  sweep_filter->add_option("--n", config.parties, "Number of parties N")->capture_default_str();
  sweep_filter->add_option("--d-grid", config.d_grid, "D grid a:b:s");
  sweep_filter->add_option("--eps-grid", config.eps_grid, "epsilon grid a:b:s");
  add_output(sweep_filter);

  auto* sweep_random = app.add_subcommand("sweep-random", "Random-protocol key rate over (D, M)");
  sweep_random->add_option("--d-grid", config.d_grid, "D grid a:b:s");
  sweep_random->add_option("--m", config.rounds, "Rounds M when no --m-grid is given")
      ->capture_default_str();
  sweep_random->add_option("--m-grid", config.m_grid, "M grid a:b:s");
  add_output(sweep_random);

  auto* thresholds = app.add_subcommand("thresholds", "Smallest D with a positive key rate");
  thresholds->add_option("--mode", config.mode, "random | filter | both")->capture_default_str();
  thresholds->add_option("--n", config.parties, "Parties for the filter scan")->capture_default_str();
  thresholds->add_option("--m", config.rounds, "Rounds for the random scan")->capture_default_str();
  thresholds->add_option("--d-grid", config.d_grid, "D scan a:b:s");
  thresholds->add_option("--eps-grid", config.eps_grid, "epsilon grid a:b:s (filter)");

  auto* multikey = app.add_subcommand("multikey", "Multipartite key bounds from pairwise rates");
  multikey->add_option("--rates", flags.rates, "r or r1,r2,r3")->required();
  multikey->add_option("--n", config.parties, "Parties for the chain bound")->capture_default_str();

  auto* squeeze = app.add_subcommand("squeeze", "Privacy-squeezed state of the pair (k,l) and its key rate");
  add_family(squeeze);
  squeeze->add_option("--pair", flags.pair, "Pair k,l (1-based)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wlike::kExitOk : wlike::kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.format = wlike::parse_format(flags.format);
    config.side_limit = flags.side_limit;
    if (!flags.rates.empty()) config.rates = split_numbers(flags.rates);
    const auto pair = split_numbers(flags.pair);
    if (pair.size() != 2) throw std::invalid_argument("--pair expects k,l");
    config.pair = {static_cast<int>(pair[0]), static_cast<int>(pair[1])};
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wlike::kExitUsage;
  }
  return wlike::run_command(config, std::cout, std::cerr);
}
