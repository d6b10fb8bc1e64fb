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

#include "wlike/key_rates.hpp"

#include <cmath>
#include <string>

#include "wlike/operator.hpp"

namespace wlike {

namespace {

// Entropy of a positive matrix normalized by `weight`; eigen-noise below the
// tolerance is clipped.
template <typename M>
double scaled_entropy(const M& m, double weight) {
  Eigen::SelfAdjointEigenSolver<M> solver(m / weight, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  return shannon_entropy(values);
}

}  // namespace

CcqState ccq_from_two_qubit(const Eigen::Matrix4cd& rho, double tol) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw NotHermitianError("ccq_from_two_qubit: input is not Hermitian (residual " +
                            std::to_string(herm) + ")");
  }
  const Eigen::Matrix4cd h = (rho + rho.adjoint()) * 0.5;
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw std::domain_error("ccq_from_two_qubit: trace " + std::to_string(tr) + " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -tol) {
    throw NegativeEigenvalueError("ccq_from_two_qubit: input has eigenvalue " +
                                  std::to_string(solver.eigenvalues()(0)));
  }
  CcqState ccq;
  for (int i = 0; i < 4; ++i) ccq.p[i] = std::max(h(i, i).real(), 0.0);
  ccq.gram = h;
  return ccq;
}

RateRecord dw_rate(const CcqState& ccq) {
  const auto& p = ccq.p;
  const std::array<double, 2> pa{p[0] + p[1], p[2] + p[3]};
  const std::array<double, 2> pb{p[0] + p[2], p[1] + p[3]};
  const double i_ab = shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(p);

  // S(E) equals the entropy of the Gram matrix; conditioning on A = i keeps
  // the 2x2 block of outcomes {i0, i1}.
  const double total = p[0] + p[1] + p[2] + p[3];
  double s_e_given_a = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (pa[i] <= 0.0) continue;
    const Eigen::Matrix2cd block = ccq.gram.block<2, 2>(2 * i, 2 * i);
    s_e_given_a += (pa[i] / total) * scaled_entropy(block, pa[i]);
  }
  const double s_e = scaled_entropy(ccq.gram, total);
  const double i_ae = s_e - s_e_given_a;
  return {i_ab, i_ae, i_ab - i_ae};
}

double chain_multikey(double r, int parties) {
  if (r < 0) throw std::invalid_argument("chain_multikey: rate must be nonnegative");
  if (parties < 2) throw std::invalid_argument("chain_multikey: need at least two parties");
  return r / (parties - 1);
}

double triangle_multikey(double r1, double r2, double r3) {
  if (r1 < 0 || r2 < 0 || r3 < 0) {
    throw std::invalid_argument("triangle_multikey: rates must be nonnegative");
  }
  // r1: A1A2, r2: A2A3, r3: A3A1.
  if (r1 > r2 + r3) throw TriangleInequalityError("triangle inequality violated: r1 > r2 + r3");
  if (r2 > r1 + r3) throw TriangleInequalityError("triangle inequality violated: r2 > r1 + r3");
  if (r3 > r1 + r2) throw TriangleInequalityError("triangle inequality violated: r3 > r1 + r2");
  return (r1 + r2 + r3) / 2;
}

}  // namespace wlike
