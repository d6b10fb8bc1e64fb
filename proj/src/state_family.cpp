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

#include "wlike/state_family.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <string>

#include <json.hpp>

namespace wlike {

namespace {

void check_party(const StateFamilyParams& params, int party) {
  if (party < 1 || party > params.parties) {
    throw std::out_of_range("party " + std::to_string(party) + " outside 1.." +
                            std::to_string(params.parties));
  }
}

// Zero-based ring index of p +/- 1.
int ring(int n, int p) { return ((p % n) + n) % n; }

// Position of B_p / C_p in the shield-only layout (p is zero-based).
int shield_B(int p) { return 2 * p; }
int shield_C(int p) { return 2 * p + 1; }

void check_side(const StateFamilyParams& params, Eigen::Index side_limit) {
  if (params.side() > side_limit) {
    throw SizeLimitError("state side " + std::to_string(params.side()) + " (N=" +
                         std::to_string(params.parties) + ", D=" +
                         std::to_string(params.shield_dim) + ") exceeds the dense limit " +
                         std::to_string(side_limit) + "; it needs " +
                         std::to_string(params.side() * params.side() * 16 / (1 << 20)) +
                         " MiB per matrix");
  }
}

// |Z^Gamma| = sum |u_ij| |ji><ji|.
MultipartiteOperator abs_z_gamma(const HermitianUnitary& u) {
  const int d = u.dim();
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(j * d + i, j * d + i) = std::abs(u.matrix()(i, j));
  }
  return {{d, d}, std::move(m)};
}

// Fills the key-space block (row, col) of a family-shaped operator.
void set_block(Matrix& m, Eigen::Index shield, int row, int col, const Matrix& value) {
  m.block(row * shield, col * shield, shield, shield) = value;
}

}  // namespace

HermitianUnitary::HermitianUnitary(Matrix u, double tol) : u_(std::move(u)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) {
    throw std::invalid_argument("unitary must be a nonempty square matrix");
  }
  const Eigen::Index d = u_.rows();
  const double unitarity = (u_ * u_.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitarity > tol) {
    throw std::invalid_argument("matrix is not unitary: max|U U^dag - I| = " +
                                std::to_string(unitarity));
  }
  const double herm = (u_ - u_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw std::invalid_argument("unitary is not Hermitian: max|U - U^dag| = " +
                                std::to_string(herm));
  }
}

HermitianUnitary hadamard_unitary(int k) {
  if (k < 1) throw std::invalid_argument("hadamard_unitary: k must be >= 1");
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  MultipartiteOperator acc({2}, h);
  for (int i = 1; i < k; ++i) acc = tensor(acc, MultipartiteOperator({2}, h));
  return HermitianUnitary(acc.matrix());
}

HermitianUnitary read_unitary_json(std::istream& in) {
  const auto j = nlohmann::json::parse(in);
  const int d = j.at("d").get<int>();
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  if (d < 1 || static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
    throw std::invalid_argument("unitary JSON: expected " + std::to_string(d) + " rows");
  }
  Matrix u(d, d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d) {
      throw std::invalid_argument("unitary JSON: row " + std::to_string(r) + " has wrong length");
    }
    for (int c = 0; c < d; ++c) u(r, c) = Complex(re[r][c], im[r][c]);
  }
  return HermitianUnitary(std::move(u));
}

StateFamilyParams::StateFamilyParams(int n, int d, HermitianUnitary u)
    : parties(n), shield_dim(d), unitary(std::move(u)) {
  if (parties < 3) throw std::invalid_argument("the family needs N >= 3 parties");
  if (parties > 20) throw std::invalid_argument("N > 20 parties is not supported");
  if (shield_dim < 2) throw std::invalid_argument("the shield dimension D must be >= 2");
  if (unitary.dim() != shield_dim) {
    throw std::invalid_argument("unitary is " + std::to_string(unitary.dim()) + "x" +
                                std::to_string(unitary.dim()) + " but D=" +
                                std::to_string(shield_dim));
  }
}

Eigen::Index StateFamilyParams::shield_side() const {
  // Saturate instead of overflowing; anything this large is refused anyway.
  Eigen::Index s = 1;
  for (int i = 0; i < 2 * parties; ++i) {
    if (s > (Eigen::Index{1} << 40)) return s;
    s *= shield_dim;
  }
  return s;
}

std::vector<int> StateFamilyParams::dims() const {
  std::vector<int> dims(parties, 2);
  dims.insert(dims.end(), 2 * parties, shield_dim);
  return dims;
}

std::vector<int> StateFamilyParams::shield_dims() const {
  return std::vector<int>(2 * parties, shield_dim);
}

StateFamilyParams make_family_params(int parties, int shield_dim) {
  if (shield_dim < 2 || (shield_dim & (shield_dim - 1)) != 0) {
    throw std::invalid_argument("no built-in unitary for D=" + std::to_string(shield_dim) +
                                "; the built-in Hadamard powers need D = 2^k");
  }
  const int k = std::countr_zero(static_cast<unsigned>(shield_dim));
  return StateFamilyParams(parties, shield_dim, hadamard_unitary(k));
}

std::vector<int> party_subsystems(const StateFamilyParams& params, int party) {
  check_party(params, party);
  const int n = params.parties;
  const int p = party - 1;
  return {p, n + shield_C(ring(n, p - 1)), n + shield_B(p)};
}

std::vector<int> party_shield_subsystems(const StateFamilyParams& params, int party) {
  check_party(params, party);
  const int p = party - 1;
  return {shield_C(ring(params.parties, p - 1)), shield_B(p)};
}

int key_index(int parties, std::initializer_list<int> excited) {
  int idx = 0;
  for (int p : excited) {
    if (p < 1 || p > parties) throw std::out_of_range("key_index: party out of range");
    idx |= 1 << (parties - p);
  }
  return idx;
}

MultipartiteOperator KeyProjectors::projector(const Vector& v) {
  const int n = static_cast<int>(std::countr_zero(static_cast<unsigned>(v.size())));
  return MultipartiteOperator::projector(v, std::vector<int>(n, 2));
}

KeyProjectors key_projectors(int parties) {
  const int side = 1 << parties;
  auto basis = [side](int idx) {
    Vector v = Vector::Zero(side);
    v(idx) = 1.0;
    return v;
  };
  KeyProjectors out;
  out.vacuum = basis(0);
  for (int i = 1; i <= parties; ++i) {
    out.single.push_back(basis(key_index(parties, {i})));
    for (int j = i + 1; j <= parties; ++j) out.pair[{i, j}] = basis(key_index(parties, {i, j}));
  }
  return out;
}

MultipartiteOperator build_Z(const HermitianUnitary& u) {
  const int d = u.dim();
  Matrix z = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) z(i * d + i, j * d + j) = u.matrix()(i, j);
  }
  return {{d, d}, std::move(z)};
}

MultipartiteOperator build_R(int d) {
  Matrix r = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) r(i * d + i, i * d + i) = 1.0;
  return {{d, d}, std::move(r)};
}

MultipartiteOperator build_X(const StateFamilyParams& params) {
  const int second[] = {1};
  const MultipartiteOperator factor = partial_transpose(build_Z(params.unitary), second);
  const std::vector<MultipartiteOperator> ring_factors(params.parties, factor);
  return tensor(ring_factors);
}

MultipartiteOperator build_X_gamma(const StateFamilyParams& params, int party) {
  return partial_transpose(build_X(params), party_shield_subsystems(params, party));
}

MultipartiteOperator abs_X(const StateFamilyParams& params) {
  const std::vector<MultipartiteOperator> factors(params.parties, abs_z_gamma(params.unitary));
  return tensor(factors);
}

MultipartiteOperator abs_X_gamma(const StateFamilyParams& params, int party) {
  check_party(params, party);
  const int n = params.parties;
  const int p = party - 1;
  const MultipartiteOperator twisted = abs_z_gamma(params.unitary);
  const MultipartiteOperator r = build_R(params.shield_dim);
  std::vector<MultipartiteOperator> factors;
  factors.reserve(n);
  for (int pair = 0; pair < n; ++pair) {
    // Pairs (p-1, p) and (p, p+1) are the ones whose transposition is undone
    // or completed by party p's transpose.
    const bool touches = pair == p || pair == ring(n, p - 1);
    factors.push_back(touches ? r : twisted);
  }
  return tensor(factors);
}

MultipartiteOperator build_Y(const StateFamilyParams& params) {
  MultipartiteOperator y = abs_X_gamma(params, 1);
  for (int p = 2; p <= params.parties; ++p) y.matrix() += abs_X_gamma(params, p).matrix();
  return y;
}

double normalization(const StateFamilyParams& params) {
  const double n = params.parties;
  const double d = params.shield_dim;
  const double u = params.unitary.abs_entry_sum();
  return n * std::pow(u, n - 2) * ((n - 1) * u * u + (d * d / 2.0) * (3 * n * n - 3 * n - 2));
}

MultipartiteOperator build_rho_unnormalized(const StateFamilyParams& params,
                                            Eigen::Index side_limit) {
  check_side(params, side_limit);
  const int n = params.parties;
  const Eigen::Index shield = params.shield_side();
  const Matrix x = build_X(params).matrix();
  const Matrix y = build_Y(params).matrix();
  const Matrix single_mass = (n - 1) * abs_X(params).matrix() + (n - 2) * y;

  Matrix m = Matrix::Zero(params.side(), params.side());
  set_block(m, shield, 0, 0, (n - 1) * y);
  for (int i = 1; i <= n; ++i) {
    const int si = key_index(n, {i});
    set_block(m, shield, si, si, single_mass);
    for (int j = 1; j <= n; ++j) {
      if (j != i) set_block(m, shield, si, key_index(n, {j}), x);
      if (j > i) {
        const int sij = key_index(n, {i, j});
        set_block(m, shield, sij, sij, y);
      }
    }
  }
  return {params.dims(), std::move(m)};
}

MultipartiteOperator build_rho(const StateFamilyParams& params, Eigen::Index side_limit) {
  MultipartiteOperator rho = build_rho_unnormalized(params, side_limit);
  rho.matrix() /= normalization(params);
  return rho;
}

MultipartiteOperator build_rho_gamma_direct(const StateFamilyParams& params, int party,
                                            Eigen::Index side_limit) {
  check_party(params, party);
  check_side(params, side_limit);
  const int n = params.parties;
  const int k = party;
  const Eigen::Index shield = params.shield_side();
  const Matrix xg = build_X_gamma(params, k).matrix();
  const Matrix y = build_Y(params).matrix();
  const Matrix single_mass = (n - 1) * abs_X(params).matrix() + (n - 2) * y;

  Matrix m = Matrix::Zero(params.side(), params.side());
  // Coherences moved onto |0..0><psi_ik| by the key transpose, plus their
  // diagonal partners.
  set_block(m, shield, 0, 0, (n - 1) * y);
  for (int i = 1; i <= n; ++i) {
    if (i == k) continue;
    const int sik = key_index(n, {i, k});
    set_block(m, shield, 0, sik, xg);
    set_block(m, shield, sik, 0, xg);
    set_block(m, shield, sik, sik, y);
  }
  // Coherences among the other parties' single excitations.
  for (int i = 1; i <= n; ++i) {
    const int si = key_index(n, {i});
    set_block(m, shield, si, si, single_mass);
    if (i == k) continue;
    for (int j = 1; j <= n; ++j) {
      if (j != i && j != k) set_block(m, shield, si, key_index(n, {j}), xg);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (i == k || j == k) continue;
      const int sij = key_index(n, {i, j});
      set_block(m, shield, sij, sij, y);
    }
  }
  m /= normalization(params);
  return {params.dims(), std::move(m)};
}

PptResult ppt_check_subsystems(const MultipartiteOperator& rho, std::span<const int> subsystems,
                               double tol) {
  const Spectrum spec = hermitian_spectrum(partial_transpose(rho, subsystems));
  return {spec.min() >= -tol, spec.min()};
}

PptResult ppt_check(const MultipartiteOperator& rho, const StateFamilyParams& params, int party,
                    double tol) {
  if (rho.dims() != params.dims()) {
    throw DimensionError("ppt_check: operator dims do not match the family layout for N=" +
                         std::to_string(params.parties) + ", D=" +
                         std::to_string(params.shield_dim));
  }
  return ppt_check_subsystems(rho, party_subsystems(params, party), tol);
}

Vector build_w_state(int parties) {
  if (parties < 2) throw std::invalid_argument("W state needs N >= 2");
  if (parties > 24) throw std::invalid_argument("W state: N too large for a dense vector");
  Vector w = Vector::Zero(Eigen::Index{1} << parties);
  const double amp = 1.0 / std::sqrt(static_cast<double>(parties));
  for (int i = 1; i <= parties; ++i) w(key_index(parties, {i})) = amp;
  return w;
}

}  // namespace wlike
