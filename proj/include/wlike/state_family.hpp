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

// The N-party W-like family.
//
// Subsystem layout of a full family member (all indices zero-based):
//
//   [A_1 ... A_N | B_1 C_1 B_2 C_2 ... B_N C_N]
//
// A_p are the key qubits. (B_p, C_p) carry the ring factor Z_{p,p+1}; B_p is
// held by party p and C_p by party p+1 (mod N), so party p owns
// {A_p, C_{p-1}, B_p}. Shield-only operators (X, Y, |X|) use the same layout
// with the key qubits removed. Party numbers in this API are 1-based.

#ifndef WLIKE_STATE_FAMILY_HPP
#define WLIKE_STATE_FAMILY_HPP

#include <iosfwd>
#include <initializer_list>
#include <map>
#include <span>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wlike/operator.hpp"

namespace wlike {

/// Dense constructions larger than this side are refused.
inline constexpr Eigen::Index kDefaultSideLimit = 8192;

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A D x D matrix that is both Hermitian and unitary (checked on construction).
class HermitianUnitary {
 public:
  explicit HermitianUnitary(Matrix u, double tol = 1e-10);

  int dim() const { return static_cast<int>(u_.rows()); }
  const Matrix& matrix() const { return u_; }
  /// Sum of |u_ij| over all entries.
  double abs_entry_sum() const { return u_.cwiseAbs().sum(); }

 private:
  Matrix u_;
};

/// H^{(x)k}, D = 2^k.
HermitianUnitary hadamard_unitary(int k);

/// Loads {"d":D,"re":[[...]],"im":[[...]]} and validates it.
HermitianUnitary read_unitary_json(std::istream& in);

struct StateFamilyParams {
  int parties;     // N >= 3
  int shield_dim;  // D >= 2
  HermitianUnitary unitary;

  StateFamilyParams(int n, int d, HermitianUnitary u);

  int key_side() const { return 1 << parties; }
  Eigen::Index shield_side() const;
  Eigen::Index side() const { return key_side() * shield_side(); }
  std::vector<int> dims() const;
  std::vector<int> shield_dims() const;
};

/// Family member with the built-in Hadamard-power unitary; D must be 2^k.
StateFamilyParams make_family_params(int parties, int shield_dim);

/// Subsystems of party p (1-based) in the full layout: {A_p, C_{p-1}, B_p}.
std::vector<int> party_subsystems(const StateFamilyParams& params, int party);
/// Party p's two shield factors within the shield-only layout.
std::vector<int> party_shield_subsystems(const StateFamilyParams& params, int party);

/// Key-space index of the basis state where exactly the listed parties hold |1>.
int key_index(int parties, std::initializer_list<int> excited);

struct KeyProjectors {
  Vector vacuum;                              // |0...0>
  std::vector<Vector> single;                 // single[i-1] = psi_i
  std::map<std::pair<int, int>, Vector> pair; // pair[{i,j}] = psi_ij, i < j

  static MultipartiteOperator projector(const Vector& v);
};

KeyProjectors key_projectors(int parties);

/// Z_D = sum u_ij |ii><jj|, dims [D, D].
MultipartiteOperator build_Z(const HermitianUnitary& u);
/// R_D = sum |ii><ii|, dims [D, D].
MultipartiteOperator build_R(int d);

/// Ring product of the factors Z_{p,p+1} transposed on C_p.
MultipartiteOperator build_X(const StateFamilyParams& params);
/// X transposed on party p's shield factors.
MultipartiteOperator build_X_gamma(const StateFamilyParams& params, int party);
/// |X| = tensor product of the diagonal |Z^Gamma| factors.
MultipartiteOperator abs_X(const StateFamilyParams& params);
/// |X^{Gamma_p}|: R_D on the two ring factors touching party p, |Z^Gamma|
/// on every other factor. Diagonal.
MultipartiteOperator abs_X_gamma(const StateFamilyParams& params, int party);
/// Y = sum_p |X^{Gamma_p}|.
MultipartiteOperator build_Y(const StateFamilyParams& params);

/// Closed-form trace of the unnormalized state:
/// N U^{N-2} [(N-1) U^2 + (D^2/2)(3N^2 - 3N - 2)], U = sum |u_ij|.
double normalization(const StateFamilyParams& params);

MultipartiteOperator build_rho_unnormalized(const StateFamilyParams& params,
                                            Eigen::Index side_limit = kDefaultSideLimit);
MultipartiteOperator build_rho(const StateFamilyParams& params,
                               Eigen::Index side_limit = kDefaultSideLimit);

/// Partial transpose of the state on party p, assembled term by term from
/// X^{Gamma_p}, |X| and Y instead of by index permutation.
MultipartiteOperator build_rho_gamma_direct(const StateFamilyParams& params, int party,
                                            Eigen::Index side_limit = kDefaultSideLimit);

struct PptResult {
  bool is_ppt;
  double min_eigenvalue;
};

PptResult ppt_check_subsystems(const MultipartiteOperator& rho, std::span<const int> subsystems,
                               double tol = kEigenTolerance);
/// Transposes {A_p, C_{p-1}, B_p} and checks the spectrum against -tol.
PptResult ppt_check(const MultipartiteOperator& rho, const StateFamilyParams& params, int party,
                    double tol = kEigenTolerance);

/// (1/sqrt N) sum_i |0..1_i..0>.
Vector build_w_state(int parties);

}  // namespace wlike

#endif  // WLIKE_STATE_FAMILY_HPP
