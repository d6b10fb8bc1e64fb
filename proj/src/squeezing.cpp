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

#include "wlike/squeezing.hpp"

#include <cmath>
#include <string>

namespace wlike {

Eigen::Matrix4cd TwoQubitXState::density() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = d;
  m(1, 2) = c;
  m(2, 1) = c;
  return m / norm;
}

Matrix Twisting::full_matrix() const {
  const Eigen::Index s = shield_side();
  Matrix u = Matrix::Zero(4 * s, 4 * s);
  for (int l = 0; l < 4; ++l) u.block(l * s, l * s, s, s) = blocks[l];
  return u;
}

MultipartiteOperator reduce_to_pair(const MultipartiteOperator& rho, const StateFamilyParams& params,
                                    int k, int l) {
  const int n = params.parties;
  if (k < 1 || k > n || l < 1 || l > n) {
    throw std::out_of_range("reduce_to_pair: parties must lie in 1.." + std::to_string(n));
  }
  if (k == l) throw std::invalid_argument("reduce_to_pair: k and l must differ");
  if (rho.dims() != params.dims()) {
    throw DimensionError("reduce_to_pair: operator dims do not match the family layout");
  }
  std::vector<int> traced;
  for (int p = 1; p <= n; ++p) {
    if (p != k && p != l) traced.push_back(p - 1);
  }
  MultipartiteOperator pair = partial_trace(rho, traced);
  if (k > l) {
    std::vector<int> order(pair.num_subsystems());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::swap(order[0], order[1]);
    pair = permute_subsystems(pair, order);
  }
  return pair;
}

Twisting build_twisting(const Matrix& x) {
  const SvdFactors f = svd_factors(x);
  const Eigen::Index s = x.rows();
  Twisting t;
  t.blocks[static_cast<int>(KeyLabel::k00)] = Matrix::Identity(s, s);
  t.blocks[static_cast<int>(KeyLabel::k01)] = f.left.adjoint();
  t.blocks[static_cast<int>(KeyLabel::k10)] = f.right.adjoint();
  t.blocks[static_cast<int>(KeyLabel::k11)] = Matrix::Identity(s, s);
  return t;
}

Eigen::Matrix4cd align_coherence_phase(const Eigen::Matrix4cd& rho) {
  const Complex coh = rho(1, 2);
  const double mag = std::abs(coh);
  if (mag == 0.0) return rho;
  // Multiply |10> by the phase of <01|rho|10>.
  const Complex phase = coh / mag;
  Eigen::Matrix4cd out = rho;
  out.row(2) *= phase;
  out.col(2) *= std::conj(phase);
  return out;
}

Eigen::Matrix4cd privacy_squeeze(const MultipartiteOperator& pair_state, const Twisting& twisting) {
  const auto& dims = pair_state.dims();
  if (dims.size() < 2 || dims[0] != 2 || dims[1] != 2) {
    throw DimensionError("privacy_squeeze: expected two key qubits first");
  }
  const Eigen::Index s = pair_state.side() / 4;
  if (s != twisting.shield_side()) {
    throw DimensionError("privacy_squeeze: shield side " + std::to_string(s) +
                         " does not match the twisting's " + std::to_string(twisting.shield_side()));
  }
  const Matrix& m = pair_state.matrix();
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Matrix rotated = twisting.blocks[r] * m.block(r * s, c * s, s, s);
      // Tr(U_r B U_c^dag) = sum_ij rotated_ij conj(U_c)_ij
      out(r, c) = (rotated.array() * twisting.blocks[c].conjugate().array()).sum();
    }
  }
  return align_coherence_phase(out);
}

TwoQubitXState xstate_closed_form(int parties, double shield_dim) {
  if (parties < 3) throw std::invalid_argument("xstate_closed_form: N must be >= 3");
  if (shield_dim < 2) throw std::invalid_argument("xstate_closed_form: D must be >= 2");
  const double n = parties;
  const double d = shield_dim;
  TwoQubitXState x;
  x.a = (n - 2) * (n - 1) * d + ((3 * n * n - 11 * n + 12) / 2) * n;
  x.b = (n - 1) * d + 2 * (n - 2) * n;
  x.c = d;
  x.d = n;
  x.norm = n * ((n - 1) * d + (3 * n * n - 3 * n - 2) / 2);
  return x;
}

}  // namespace wlike
