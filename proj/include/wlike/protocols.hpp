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

// Key distillation procedures on the family:
//  - local filtering diag(eps, 1) on both key qubits of the squeezed pair state;
//  - the three-party random protocol, where every party applies the POVM
//    {diag(sqrt(1 - eps^2), 1), diag(eps, 0)} for M rounds with
//    eps_i = 1/sqrt(1 + i) used in the order i = M, ..., 1. Exactly one
//    "stop" outcome selects the pair that keeps the key; two or more are a
//    failure; none continues to the next round.

#ifndef WLIKE_PROTOCOLS_HPP
#define WLIKE_PROTOCOLS_HPP

#include <array>
#include <optional>
#include <vector>

#include "wlike/key_rates.hpp"
#include "wlike/operator.hpp"
#include "wlike/squeezing.hpp"
#include "wlike/state_family.hpp"

namespace wlike {

struct FilterParams {
  double epsilon;
  explicit FilterParams(double eps);
};

struct FilterResult {
  TwoQubitXState state;
  double q;  // success probability
};

/// One grid point of a sweep. `epsilon` is set for filter sweeps, `rounds`
/// for random-protocol sweeps.
struct SweepRecord {
  int parties = 3;
  int shield_dim = 0;
  double epsilon = 0.0;
  int rounds = 0;
  double q = 0.0;
  double i_ab = 0.0;
  double i_ae = 0.0;
  double rate = 0.0;

  double rate_clamped() const { return rate > 0.0 ? rate : 0.0; }
};

FilterResult filter_state(const TwoQubitXState& x, FilterParams eps);

/// q * (I(A:B) - I(A:E)) of the filtered, squeezed pair state.
SweepRecord filter_rate(int parties, int shield_dim, double epsilon);

/// diag(on_zero, on_one) acting on one key qubit.
struct DiagonalKraus {
  double on_zero;
  double on_one;

  double on(int bit) const { return bit ? on_one : on_zero; }
};

struct PovmPair {
  DiagonalKraus keep;  // diag(sqrt(1 - eps^2), 1)
  DiagonalKraus stop;  // diag(eps, 0)
};

PovmPair povm_pair(double epsilon);

/// [eps_M, ..., eps_1], eps_i = 1/sqrt(1 + i).
std::vector<double> epsilon_schedule(int rounds);

/// Unordered pair of parties from {1, 2, 3}, stored with first < second.
struct PartyPair {
  int first;
  int second;

  PartyPair(int a, int b);
  /// The remaining party, whose "stop" outcome selects this pair.
  int other() const { return 6 - first - second; }
};

struct RandomProtocolParams {
  int rounds;
  int shield_dim;
  PartyPair success_pair;

  RandomProtocolParams(int m, int d, PartyPair pair);
};

struct BranchState {
  MultipartiteOperator state;  // normalized
  double probability;
};

/// Exact sum over the M success branches for `pair` (continue in rounds
/// before m, success in round m) applied to the three-party state `rho`.
BranchState random_branch_state(const MultipartiteOperator& rho, const StateFamilyParams& params,
                                int rounds, PartyPair pair);
BranchState random_branch_state(const StateFamilyParams& params, int rounds, PartyPair pair);

/// Probability mass of every outcome class after M rounds.
struct BranchAccounting {
  std::array<double, 3> success;  // pairs (1,2), (1,3), (2,3)
  double failure;
  double continuing;

  double total() const { return success[0] + success[1] + success[2] + failure + continuing; }
};

BranchAccounting random_branch_accounting(const MultipartiteOperator& rho,
                                          const StateFamilyParams& params, int rounds);

/// Full numeric chain: branch state -> drop the third key qubit -> squeeze
/// with the SVD twisting of X.
Eigen::Matrix4cd random_squeezed_state(const StateFamilyParams& params, int rounds, PartyPair pair);

/// (2M^2(D+4) + M(2D+7)) / (6(D+4)(M+1)^2).
double random_success_prob(double shield_dim, int rounds);

/// (2(2M+1)/(M+1), 2D+3, D, 6) / G, G = 2[2M(D+4) + 2D + 7]/(M+1).
TwoQubitXState random_xstate_closed_form(double shield_dim, int rounds);

/// q * (I(A1:A2) - I(A1:E)) of the closed-form squeezed output.
SweepRecord random_rate(int shield_dim, int rounds);

enum class ThresholdMode { filter, random };

struct ThresholdSearch {
  ThresholdMode mode = ThresholdMode::random;
  int parties = 3;
  int d_min = 2;
  int d_max = 500;
  int d_step = 1;
  std::vector<double> eps_grid;  // filter mode
  int rounds = 100;              // random mode
};

struct ThresholdResult {
  int shield_dim;
  SweepRecord best;  // the positive-rate record found at shield_dim
};

/// Smallest scanned D with a positive rate (filter: for some grid epsilon);
/// nullopt when no D in range qualifies.
std::optional<ThresholdResult> find_threshold_D(const ThresholdSearch& search);

/// Grid sweeps; D outer, epsilon / M inner. Row order is fixed regardless of
/// `threads`.
std::vector<SweepRecord> sweep_filter(int parties, const std::vector<int>& d_grid,
                                      const std::vector<double>& eps_grid, int threads = 1);
std::vector<SweepRecord> sweep_random(const std::vector<int>& d_grid, const std::vector<int>& m_grid,
                                      int threads = 1);

}  // namespace wlike

#endif  // WLIKE_PROTOCOLS_HPP
