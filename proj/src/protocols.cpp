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

#include "wlike/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace wlike {

namespace {

constexpr int kRandomParties = 3;

// Evaluates f(i) for i in [0, n) on up to `threads` workers; results land at
// their own index.
template <typename F>
std::vector<SweepRecord> parallel_map(std::size_t n, int threads, F f) {
  std::vector<SweepRecord> out(n);
  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

RateRecord rate_of(const TwoQubitXState& x) { return dw_rate(ccq_from_two_qubit(x.density())); }

// Amplitude of the key basis state `key` under a per-party diagonal Kraus
// product; party p is bit (N - p) of the key index.
double key_amplitude(int key, int parties, const std::array<DiagonalKraus, kRandomParties>& ops) {
  double a = 1.0;
  for (int p = 1; p <= parties; ++p) a *= ops[p - 1].on((key >> (parties - p)) & 1);
  return a;
}

void require_three_party(const StateFamilyParams& params) {
  if (params.parties != kRandomParties) {
    throw std::invalid_argument("the random protocol is defined for N=3 only (got N=" +
                                std::to_string(params.parties) + ")");
  }
}

}  // namespace

FilterParams::FilterParams(double eps) : epsilon(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("filter parameter epsilon must lie in [0, 1]");
  }
}

FilterResult filter_state(const TwoQubitXState& x, FilterParams eps) {
  const double e2 = eps.epsilon * eps.epsilon;
  TwoQubitXState out;
  out.a = x.a * e2 * e2;
  out.b = x.b * e2;
  out.c = x.c * e2;
  out.d = x.d;
  out.norm = out.a + 2 * out.b + out.d;
  return {out, out.norm / x.norm};
}

SweepRecord filter_rate(int parties, int shield_dim, double epsilon) {
  SweepRecord rec;
  rec.parties = parties;
  rec.shield_dim = shield_dim;
  rec.epsilon = epsilon;
  const FilterResult f = filter_state(xstate_closed_form(parties, shield_dim), FilterParams(epsilon));
  rec.q = f.q;
  // eps = 0 leaves |11><11|, which carries no key; q = 0 leaves no state.
  if (epsilon == 0.0 || f.q == 0.0) return rec;
  const RateRecord r = rate_of(f.state);
  rec.i_ab = r.i_ab;
  rec.i_ae = r.i_ae;
  rec.rate = f.q * r.rate;
  return rec;
}

PovmPair povm_pair(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("POVM parameter epsilon must lie in [0, 1]");
  }
  return {{std::sqrt(1.0 - epsilon * epsilon), 1.0}, {epsilon, 0.0}};
}

std::vector<double> epsilon_schedule(int rounds) {
  if (rounds < 1) throw std::invalid_argument("epsilon_schedule: M must be >= 1");
  std::vector<double> eps;
  eps.reserve(rounds);
  for (int i = rounds; i >= 1; --i) eps.push_back(1.0 / std::sqrt(1.0 + i));
  return eps;
}

PartyPair::PartyPair(int a, int b) : first(std::min(a, b)), second(std::max(a, b)) {
  if (first < 1 || second > kRandomParties || first == second) {
    throw std::invalid_argument("success pair must be two distinct parties from {1,2,3}");
  }
}

RandomProtocolParams::RandomProtocolParams(int m, int d, PartyPair pair)
    : rounds(m), shield_dim(d), success_pair(pair) {
  if (m < 1) throw std::invalid_argument("the random protocol needs M >= 1 rounds");
  if (d < 2) throw std::invalid_argument("the random protocol needs D >= 2");
}

BranchState random_branch_state(const MultipartiteOperator& rho, const StateFamilyParams& params,
                                int rounds, PartyPair pair) {
  require_three_party(params);
  if (rho.dims() != params.dims()) {
    throw DimensionError("random_branch_state: operator dims do not match the family layout");
  }
  const auto schedule = epsilon_schedule(rounds);
  const int n = params.parties;
  const int keys = params.key_side();

  // weight(r, c) = sum over success rounds of K(r) K(c) for the diagonal
  // key Kraus K of that branch.
  std::vector<double> carried(keys, 1.0);
  Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(keys, keys);
  for (double eps : schedule) {
    const PovmPair povm = povm_pair(eps);
    std::array<DiagonalKraus, kRandomParties> success{povm.keep, povm.keep, povm.keep};
    success[pair.other() - 1] = povm.stop;
    const std::array<DiagonalKraus, kRandomParties> keep{povm.keep, povm.keep, povm.keep};

    Eigen::VectorXd amp(keys);
    for (int key = 0; key < keys; ++key) amp(key) = carried[key] * key_amplitude(key, n, success);
    weight += amp * amp.transpose();
    for (int key = 0; key < keys; ++key) carried[key] *= key_amplitude(key, n, keep);
  }

  const Eigen::Index s = params.shield_side();
  Matrix g = rho.matrix();
  for (int kc = 0; kc < keys; ++kc) {
    for (int kr = 0; kr < keys; ++kr) g.block(kr * s, kc * s, s, s) *= weight(kr, kc);
  }
  const double prob = g.trace().real();
  if (prob > 0.0) g /= prob;
  return {MultipartiteOperator(rho.dims(), std::move(g)), prob};
}

BranchState random_branch_state(const StateFamilyParams& params, int rounds, PartyPair pair) {
  require_three_party(params);
  return random_branch_state(build_rho(params), params, rounds, pair);
}

BranchAccounting random_branch_accounting(const MultipartiteOperator& rho,
                                          const StateFamilyParams& params, int rounds) {
  require_three_party(params);
  const auto schedule = epsilon_schedule(rounds);
  const int n = params.parties;
  const int keys = params.key_side();
  const Eigen::Index s = params.shield_side();

  std::vector<double> key_mass(keys);
  for (int key = 0; key < keys; ++key) {
    key_mass[key] = rho.matrix().block(key * s, key * s, s, s).trace().real();
  }

  BranchAccounting acc{{0.0, 0.0, 0.0}, 0.0, 0.0};
  std::vector<double> carried(keys, 1.0);
  for (double eps : schedule) {
    const PovmPair povm = povm_pair(eps);
    // Outcome bit p set means party p+1 obtained "stop".
    for (int outcome = 0; outcome < 8; ++outcome) {
      std::array<DiagonalKraus, kRandomParties> ops{};
      int stops = 0;
      for (int p = 0; p < kRandomParties; ++p) {
        const bool stop = (outcome >> p) & 1;
        ops[p] = stop ? povm.stop : povm.keep;
        stops += stop;
      }
      if (stops == 0) continue;
      double mass = 0.0;
      for (int key = 0; key < keys; ++key) {
        const double a = carried[key] * key_amplitude(key, n, ops);
        mass += key_mass[key] * a * a;
      }
      if (stops == 1) {
        const int stopped = std::countr_zero(static_cast<unsigned>(outcome)) + 1;
        // Stop at party 3 -> pair (1,2) -> slot 0; party 2 -> (1,3); party 1 -> (2,3).
        acc.success[kRandomParties - stopped] += mass;
      } else {
        acc.failure += mass;
      }
    }
    const std::array<DiagonalKraus, kRandomParties> keep{povm.keep, povm.keep, povm.keep};
    for (int key = 0; key < keys; ++key) carried[key] *= key_amplitude(key, n, keep);
  }
  for (int key = 0; key < keys; ++key) acc.continuing += key_mass[key] * carried[key] * carried[key];
  return acc;
}

Eigen::Matrix4cd random_squeezed_state(const StateFamilyParams& params, int rounds, PartyPair pair) {
  const BranchState branch = random_branch_state(params, rounds, pair);
  const MultipartiteOperator reduced = reduce_to_pair(branch.state, params, pair.first, pair.second);
  return privacy_squeeze(reduced, build_twisting(build_X(params).matrix()));
}

double random_success_prob(double shield_dim, int rounds) {
  if (shield_dim < 2) throw std::invalid_argument("random_success_prob: D must be >= 2");
  if (rounds < 1) throw std::invalid_argument("random_success_prob: M must be >= 1");
  const double d = shield_dim;
  const double m = rounds;
  return (2 * m * m * (d + 4) + m * (2 * d + 7)) / (6 * (d + 4) * (m + 1) * (m + 1));
}

TwoQubitXState random_xstate_closed_form(double shield_dim, int rounds) {
  if (shield_dim < 2) throw std::invalid_argument("random_xstate_closed_form: D must be >= 2");
  if (rounds < 1) throw std::invalid_argument("random_xstate_closed_form: M must be >= 1");
  const double d = shield_dim;
  const double m = rounds;
  TwoQubitXState x;
  x.a = 2 * (2 * m + 1) / (m + 1);
  x.b = 2 * d + 3;
  x.c = d;
  x.d = 6;
  x.norm = 2 * (2 * m * (d + 4) + 2 * d + 7) / (m + 1);
  return x;
}

SweepRecord random_rate(int shield_dim, int rounds) {
  SweepRecord rec;
  rec.parties = kRandomParties;
  rec.shield_dim = shield_dim;
  rec.rounds = rounds;
  rec.q = random_success_prob(shield_dim, rounds);
  const RateRecord r = rate_of(random_xstate_closed_form(shield_dim, rounds));
  rec.i_ab = r.i_ab;
  rec.i_ae = r.i_ae;
  rec.rate = rec.q * r.rate;
  return rec;
}

std::optional<ThresholdResult> find_threshold_D(const ThresholdSearch& search) {
  if (search.d_min < 2 || search.d_max < search.d_min || search.d_step < 1) {
    throw std::invalid_argument("threshold search: need 2 <= d_min <= d_max and d_step >= 1");
  }
  if (search.mode == ThresholdMode::filter && search.eps_grid.empty()) {
    throw std::invalid_argument("threshold search: filter mode needs an epsilon grid");
  }
  for (int d = search.d_min; d <= search.d_max; d += search.d_step) {
    if (search.mode == ThresholdMode::random) {
      const SweepRecord rec = random_rate(d, search.rounds);
      if (rec.rate > 0.0) return ThresholdResult{d, rec};
      continue;
    }
    std::optional<SweepRecord> best;
    for (double eps : search.eps_grid) {
      const SweepRecord rec = filter_rate(search.parties, d, eps);
      if (rec.rate > 0.0 && (!best || rec.rate > best->rate)) best = rec;
    }
    if (best) return ThresholdResult{d, *best};
  }
  return std::nullopt;
}

std::vector<SweepRecord> sweep_filter(int parties, const std::vector<int>& d_grid,
                                      const std::vector<double>& eps_grid, int threads) {
  const std::size_t ne = eps_grid.size();
  return parallel_map(d_grid.size() * ne, threads, [&](std::size_t i) {
    return filter_rate(parties, d_grid[i / ne], eps_grid[i % ne]);
  });
}

std::vector<SweepRecord> sweep_random(const std::vector<int>& d_grid, const std::vector<int>& m_grid,
                                      int threads) {
  const std::size_t nm = m_grid.size();
  return parallel_map(d_grid.size() * nm, threads, [&](std::size_t i) {
    return random_rate(d_grid[i / nm], m_grid[i % nm]);
  });
}

}  // namespace wlike
