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

#ifndef WLIKE_SQUEEZING_HPP
#define WLIKE_SQUEEZING_HPP

#include <array>

#include "wlike/operator.hpp"
#include "wlike/state_family.hpp"

namespace wlike {

/// Two-qubit key-basis labels, |A_k A_l>.
enum class KeyLabel : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

/// Key-controlled shield unitary sum_ij |ij><ij| (x) U_ij.
struct Twisting {
  std::array<Matrix, 4> blocks;

  const Matrix& operator[](KeyLabel l) const { return blocks[static_cast<int>(l)]; }
  Eigen::Index shield_side() const { return blocks[0].rows(); }
  /// The full (4 S) x (4 S) unitary.
  Matrix full_matrix() const;
};

/// Unnormalized two-qubit X-state
///
///   1/norm [[a, 0, 0, 0],
///           [0, b, c, 0],
///           [0, c, b, 0],
///           [0, 0, 0, d]]
struct TwoQubitXState {
  double a;
  double b;
  double c;
  double d;
  double norm;

  Eigen::Matrix4cd density() const;
};

/// Traces out every key qubit except A_k and A_l; the result is ordered
/// [A_k, A_l, shield...].
MultipartiteOperator reduce_to_pair(const MultipartiteOperator& rho, const StateFamilyParams& params,
                                    int k, int l);

/// U_00 = U_11 = 1, U_01 = W^dag, U_10 = V^dag for X = W S V^dag, so that
/// U_01 X U_10^dag = S.
Twisting build_twisting(const Matrix& x);

/// Tr_shield(U_t rho U_t^dag) on a [2, 2, shield...] operator, followed by
/// align_coherence_phase.
Eigen::Matrix4cd privacy_squeeze(const MultipartiteOperator& pair_state, const Twisting& twisting);

/// Applies a key-diagonal phase so that the <01|.|10> entry is real and
/// nonnegative. Leaves the key-basis statistics untouched.
Eigen::Matrix4cd align_coherence_phase(const Eigen::Matrix4cd& rho);

/// Closed-form privacy-squeezed pair state of the N-party family with
/// |u_ij| = 1/sqrt(D).
TwoQubitXState xstate_closed_form(int parties, double shield_dim);

}  // namespace wlike

#endif  // WLIKE_SQUEEZING_HPP
