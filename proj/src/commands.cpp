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

#include "wlike/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "wlike/key_rates.hpp"
#include "wlike/protocols.hpp"
#include "wlike/squeezing.hpp"

namespace wlike {

namespace {

// Opens --out when given, otherwise hands back the default stream.
class OutputTarget {
 public:
  OutputTarget(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::invalid_argument("cannot open output file '" + *path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<int> int_grid_or(const std::optional<std::string>& text, const char* fallback) {
  return expand_int_grid(parse_grid(text ? *text : fallback));
}

std::vector<double> eps_grid_or(const std::optional<std::string>& text, const char* fallback) {
  auto grid = expand_grid(parse_grid(text ? *text : fallback));
  for (double e : grid) {
    if (e < 0.0 || e > 1.0) throw std::invalid_argument("epsilon grid must stay within [0, 1]");
  }
  return grid;
}

std::vector<int> parties_to_check(const RunConfig& config, int parties) {
  if (config.party) {
    if (*config.party < 1 || *config.party > parties) {
      throw std::invalid_argument("--party must lie in 1.." + std::to_string(parties));
    }
    return {*config.party};
  }
  std::vector<int> all;
  for (int p = 1; p <= parties; ++p) all.push_back(p);
  return all;
}

}  // namespace

StateFamilyParams family_params_from(const RunConfig& config) {
  if (config.unitary_path) {
    std::ifstream in(*config.unitary_path);
    if (!in) throw std::invalid_argument("cannot open unitary file '" + *config.unitary_path + "'");
    return StateFamilyParams(config.parties, config.shield_dim, read_unitary_json(in));
  }
  return make_family_params(config.parties, config.shield_dim);
}

int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateFamilyParams params = family_params_from(config);
  const MultipartiteOperator rho = build_rho(params, config.side_limit);
  OutputTarget target(config.out_path, out);
  write_operator_json(target.stream(), rho);
  const Spectrum spec = hermitian_spectrum(rho);
  std::ostream& summary = target.is_file() ? out : err;
  summary << "N=" << params.parties << " D=" << params.shield_dim << " side=" << rho.side()
          << " trace=" << format_number(rho.trace().real())
          << " hermiticity_residual=" << format_number(rho.hermiticity_residual())
          << " min_eigenvalue=" << format_number(spec.min()) << '\n';
  return kExitOk;
}

int cmd_ppt_check(const RunConfig& config, std::ostream& out, std::ostream&) {
  bool all_ppt = true;
  auto report = [&](int party, const PptResult& r) {
    out << "party " << party << ": min_eigenvalue=" << format_number(r.min_eigenvalue) << ' '
        << (r.is_ppt ? "PPT" : "NPT") << '\n';
    all_ppt = all_ppt && r.is_ppt;
  };

  if (config.state == "w") {
    const int n = config.parties;
    const Vector w = build_w_state(n);
    const auto proj = MultipartiteOperator::projector(w, std::vector<int>(n, 2));
    for (int p : parties_to_check(config, n)) {
      const int cut[] = {p - 1};
      report(p, ppt_check_subsystems(proj, cut, config.tol));
    }
  } else if (config.state == "family") {
    const StateFamilyParams params = family_params_from(config);
    const MultipartiteOperator rho = build_rho(params, config.side_limit);
    for (int p : parties_to_check(config, params.parties)) {
      report(p, ppt_check(rho, params, p, config.tol));
    }
  } else {
    throw std::invalid_argument("--state must be 'family' or 'w'");
  }
  out << (all_ppt ? "all cuts PPT" : "NPT cut found") << '\n';
  return all_ppt ? kExitOk : kExitCheckFailed;
}

int cmd_sweep_filter(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.parties < 3) throw std::invalid_argument("--n must be >= 3");
  const auto d_grid = int_grid_or(config.d_grid, "100:6000:100");
  const auto eps_grid = eps_grid_or(config.eps_grid, "0:1:0.01");
  if (d_grid.front() < 2) throw std::invalid_argument("D grid must start at 2 or above");
  const auto rows = sweep_filter(config.parties, d_grid, eps_grid, config.threads);
  OutputTarget target(config.out_path, out);
  write_sweep(target.stream(), config.format, SweepKind::filter, rows);
  return kExitOk;
}

int cmd_sweep_random(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto d_grid = int_grid_or(config.d_grid, "2:200:2");
  const auto m_grid = config.m_grid ? int_grid_or(config.m_grid, "")
                                    : std::vector<int>{config.rounds};
  if (d_grid.front() < 2) throw std::invalid_argument("D grid must start at 2 or above");
  if (m_grid.front() < 1) throw std::invalid_argument("M grid must start at 1 or above");
  const auto rows = sweep_random(d_grid, m_grid, config.threads);
  OutputTarget target(config.out_path, out);
  write_sweep(target.stream(), config.format, SweepKind::random, rows);
  return kExitOk;
}

int cmd_thresholds(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.mode != "random" && config.mode != "filter" && config.mode != "both") {
    throw std::invalid_argument("--mode must be random, filter or both");
  }
  bool all_found = true;
  auto run = [&](ThresholdMode mode, const char* default_d) {
    const GridSpec d = parse_grid(config.d_grid ? *config.d_grid : default_d);
    const auto d_points = expand_int_grid(d);
    ThresholdSearch search;
    search.mode = mode;
    search.parties = mode == ThresholdMode::random ? 3 : config.parties;
    search.d_min = d_points.front();
    search.d_max = d_points.back();
    search.d_step = static_cast<int>(d.step);
    search.rounds = config.rounds;
    if (mode == ThresholdMode::filter) search.eps_grid = eps_grid_or(config.eps_grid, "0:1:0.01");
    const auto found = find_threshold_D(search);

    if (mode == ThresholdMode::random) {
      out << "random N=3 M=" << config.rounds;
    } else {
      out << "filter N=" << search.parties;
    }
    if (found) {
      out << ": threshold D=" << found->shield_dim;
      if (mode == ThresholdMode::filter) out << " epsilon=" << format_number(found->best.epsilon);
      out << " rate=" << format_number(found->best.rate) << '\n';
    } else {
      out << ": no threshold in range [" << search.d_min << ", " << search.d_max << "]\n";
      all_found = false;
    }
  };
  if (config.mode != "filter") run(ThresholdMode::random, "2:500:1");
  if (config.mode != "random") run(ThresholdMode::filter, "2:6000:1");
  return all_found ? kExitOk : kExitCheckFailed;
}

int cmd_multikey(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.rates.empty()) throw std::invalid_argument("multikey needs --rates r1[,r2,r3]");
  const double weakest = *std::min_element(config.rates.begin(), config.rates.end());
  out << "chain N=" << config.parties << ": " << format_number(chain_multikey(weakest, config.parties))
      << '\n';
  if (config.rates.size() == 3) {
    try {
      const double t = triangle_multikey(config.rates[0], config.rates[1], config.rates[2]);
      out << "triangle: " << format_number(t) << '\n';
    } catch (const TriangleInequalityError& e) {
      out << "triangle: " << e.what() << '\n';
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

int cmd_squeeze(const RunConfig& config, std::ostream& out, std::ostream&) {
  const StateFamilyParams params = family_params_from(config);
  const MultipartiteOperator rho = build_rho(params, config.side_limit);
  const auto [k, l] = config.pair;
  const MultipartiteOperator pair_state = reduce_to_pair(rho, params, k, l);
  const Eigen::Matrix4cd squeezed = privacy_squeeze(pair_state, build_twisting(build_X(params).matrix()));
  const TwoQubitXState closed = xstate_closed_form(params.parties, params.shield_dim);
  const Eigen::Matrix4cd expected = closed.density();

  out << "pair (" << k << "," << l << ") N=" << params.parties << " D=" << params.shield_dim << '\n';
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out << (c ? " " : "") << format_number(squeezed(r, c).real());
      if (squeezed(r, c).imag() != 0.0) out << (squeezed(r, c).imag() > 0 ? "+" : "") << format_number(squeezed(r, c).imag()) << 'i';
    }
    out << '\n';
  }
  const double deviation = (squeezed - expected).cwiseAbs().maxCoeff();
  out << "closed form (a,b,c,d)/norm = (" << format_number(closed.a) << ',' << format_number(closed.b) << ','
      << format_number(closed.c) << ',' << format_number(closed.d) << ")/" << format_number(closed.norm)
      << " max_deviation=" << format_number(deviation) << '\n';
  const RateRecord r = dw_rate(ccq_from_two_qubit(squeezed));
  out << "i_ab=" << format_number(r.i_ab) << " i_ae=" << format_number(r.i_ae)
      << " rate=" << format_number(r.rate) << '\n';
  return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "construct") return cmd_construct(config, out, err);
    if (config.command == "ppt-check") return cmd_ppt_check(config, out, err);
    if (config.command == "sweep-filter") return cmd_sweep_filter(config, out, err);
    if (config.command == "sweep-random") return cmd_sweep_random(config, out, err);
    if (config.command == "thresholds") return cmd_thresholds(config, out, err);
    if (config.command == "squeeze") return cmd_squeeze(config, out, err);
    if (config.command == "multikey") return cmd_multikey(config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace wlike
