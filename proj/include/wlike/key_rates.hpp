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

#ifndef WLIKE_KEY_RATES_HPP
#define WLIKE_KEY_RATES_HPP

#include <array>
#include <stdexcept>

#include <Eigen/Dense>

namespace wlike {

/// Outcome of measuring both key qubits of a purified two-qubit state in the
/// computational basis. Outcomes are indexed ij -> 2i + j.
struct CcqState {
  std::array<double, 4> p;
  /// gram(kl, ij) = <kl|rho|ij>: overlaps of Eve's unnormalized conditional
  /// states (in the conjugate purification basis). Diagonal equals p.
  Eigen::Matrix4cd gram;
};

/// Devetak-Winter quantities, in bits.
struct RateRecord {
  double i_ab;
  double i_ae;
  double rate;  // i_ab - i_ae; may be negative
};

class TriangleInequalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CcqState ccq_from_two_qubit(const Eigen::Matrix4cd& rho, double tol = 1e-10);

/// I(A:B) - I(A:E) with A the first key qubit; every Eve entropy comes from
/// the Gram matrix spectrum.
RateRecord dw_rate(const CcqState& ccq);

/// Rate of N-party key from pairwise keys A_i A_{i+1} at rate r: r / (N - 1).
double chain_multikey(double r, int parties);

/// (r1 + r2 + r3) / 2 for three pairwise rates obeying the triangle inequality.
double triangle_multikey(double r1, double r2, double r3);

}  // namespace wlike

#endif  // WLIKE_KEY_RATES_HPP
