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

#include "wlike/operator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <json.hpp>

namespace wlike {

namespace {

std::vector<Eigen::Index> strides_of(std::span<const int> dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

void check_subsystems(const MultipartiteOperator& op, std::span<const int> subsystems,
                      const char* what) {
  std::vector<bool> seen(op.num_subsystems(), false);
  for (int s : subsystems) {
    if (s < 0 || static_cast<std::size_t>(s) >= op.num_subsystems()) {
      throw DimensionError(std::string(what) + ": subsystem index " + std::to_string(s) +
                           " out of range for " + std::to_string(op.num_subsystems()) +
                           " subsystems");
    }
    if (seen[s]) {
      throw DimensionError(std::string(what) + ": subsystem " + std::to_string(s) +
                           " listed twice");
    }
    seen[s] = true;
  }
}

// Contribution of the selected subsystems' digits to each flat index.
std::vector<Eigen::Index> selected_part(std::span<const int> dims, std::span<const int> subsystems) {
  const auto strides = strides_of(dims);
  const Eigen::Index side = product_of_dims(dims);
  std::vector<Eigen::Index> part(side, 0);
  for (Eigen::Index idx = 0; idx < side; ++idx) {
    Eigen::Index acc = 0;
    for (int s : subsystems) {
      acc += ((idx / strides[s]) % dims[s]) * strides[s];
    }
    part[idx] = acc;
  }
  return part;
}

struct DisjointSets {
  explicit DisjointSets(Eigen::Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Eigen::Index find(Eigen::Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Eigen::Index> parent;
};

void require_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_spectrum: matrix is not square");
  const double scale = m.cwiseAbs().maxCoeff();
  const double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (residual > rel_tol * scale) {
    throw NotHermitianError("operator is not Hermitian: max|M - M^dag| = " +
                            std::to_string(residual) + " exceeds " +
                            std::to_string(rel_tol) + " * max|M| = " +
                            std::to_string(rel_tol * scale));
  }
}

void append_number(std::string& buf, double x) {
  char tmp[32];
  auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof(tmp), x);
  (void)ec;
  buf.append(tmp, ptr);
}

}  // namespace

Eigen::Index product_of_dims(std::span<const int> dims) {
  Eigen::Index side = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("subsystem dimensions must be positive");
    side *= d;
  }
  return side;
}

MultipartiteOperator::MultipartiteOperator(std::vector<int> dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const Eigen::Index side = product_of_dims(dims_);
  if (entries_.rows() != side || entries_.cols() != side) {
    throw DimensionError("matrix is " + std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()) + " but the subsystem dimensions multiply to " +
                         std::to_string(side));
  }
}

MultipartiteOperator MultipartiteOperator::identity(std::vector<int> dims) {
  const Eigen::Index side = product_of_dims(dims);
  return {std::move(dims), Matrix::Identity(side, side)};
}

MultipartiteOperator MultipartiteOperator::zero(std::vector<int> dims) {
  const Eigen::Index side = product_of_dims(dims);
  return {std::move(dims), Matrix::Zero(side, side)};
}

MultipartiteOperator MultipartiteOperator::projector(const Vector& v, std::vector<int> dims) {
  return {std::move(dims), v * v.adjoint()};
}

double MultipartiteOperator::hermiticity_residual() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool MultipartiteOperator::is_hermitian(double rel_tol) const {
  if (entries_.size() == 0) return true;
  return hermiticity_residual() <= rel_tol * entries_.cwiseAbs().maxCoeff();
}

double Spectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

double Spectrum::abs_sum() const {
  double s = 0.0;
  for (double x : eigenvalues) s += std::abs(x);
  return s;
}

MultipartiteOperator tensor(std::span<const MultipartiteOperator> ops) {
  if (ops.empty()) throw DimensionError("tensor: empty operator list");
  std::vector<int> dims = ops.front().dims();
  Matrix acc = ops.front().matrix();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    const Matrix& b = ops[i].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index c = 0; c < acc.cols(); ++c) {
      for (Eigen::Index r = 0; r < acc.rows(); ++r) {
        next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
      }
    }
    acc = std::move(next);
    dims.insert(dims.end(), ops[i].dims().begin(), ops[i].dims().end());
  }
  return {std::move(dims), std::move(acc)};
}

MultipartiteOperator tensor(const MultipartiteOperator& a, const MultipartiteOperator& b) {
  const MultipartiteOperator pair[] = {a, b};
  return tensor(std::span<const MultipartiteOperator>(pair));
}

MultipartiteOperator partial_transpose(const MultipartiteOperator& op,
                                       std::span<const int> subsystems) {
  check_subsystems(op, subsystems, "partial_transpose");
  const auto part = selected_part(op.dims(), subsystems);
  const Matrix& m = op.matrix();
  const Eigen::Index side = m.rows();
  Matrix out(side, side);
  // Swapping the selected digits between row and column index.
  for (Eigen::Index c = 0; c < side; ++c) {
    const Eigen::Index pc = part[c];
    for (Eigen::Index r = 0; r < side; ++r) {
      const Eigen::Index pr = part[r];
      out(r - pr + pc, c - pc + pr) = m(r, c);
    }
  }
  return {op.dims(), std::move(out)};
}

MultipartiteOperator partial_trace(const MultipartiteOperator& op,
                                   std::span<const int> subsystems) {
  check_subsystems(op, subsystems, "partial_trace");
  const auto& dims = op.dims();
  const auto strides = strides_of(dims);
  std::vector<bool> traced(dims.size(), false);
  for (int s : subsystems) traced[s] = true;

  std::vector<int> kept_dims;
  std::vector<int> kept;
  std::vector<int> gone;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (traced[s]) {
      gone.push_back(static_cast<int>(s));
    } else {
      kept.push_back(static_cast<int>(s));
      kept_dims.push_back(dims[s]);
    }
  }
  std::vector<int> gone_dims;
  for (int s : gone) gone_dims.push_back(dims[s]);

  // Offsets into the full index for each reduced index and each traced index.
  auto offsets = [&](const std::vector<int>& which, const std::vector<int>& wdims) {
    const auto local = strides_of(wdims);
    const Eigen::Index n = product_of_dims(wdims);
    std::vector<Eigen::Index> off(n, 0);
    for (Eigen::Index idx = 0; idx < n; ++idx) {
      Eigen::Index acc = 0;
      for (std::size_t p = 0; p < which.size(); ++p) {
        acc += ((idx / local[p]) % wdims[p]) * strides[which[p]];
      }
      off[idx] = acc;
    }
    return off;
  };
  const auto kept_off = offsets(kept, kept_dims);
  const auto gone_off = offsets(gone, gone_dims);

  const Matrix& m = op.matrix();
  const auto n_out = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(n_out, n_out);
  for (Eigen::Index c = 0; c < n_out; ++c) {
    for (Eigen::Index r = 0; r < n_out; ++r) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t : gone_off) acc += m(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = acc;
    }
  }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return {std::move(kept_dims), std::move(out)};
}

MultipartiteOperator permute_subsystems(const MultipartiteOperator& op,
                                        std::span<const int> order) {
  if (order.size() != op.num_subsystems()) {
    throw DimensionError("permute_subsystems: order must list every subsystem once");
  }
  check_subsystems(op, order, "permute_subsystems");
  const auto& dims = op.dims();
  const auto old_strides = strides_of(dims);
  std::vector<int> new_dims;
  for (int s : order) new_dims.push_back(dims[s]);
  const auto new_strides = strides_of(new_dims);

  const Eigen::Index side = op.side();
  std::vector<Eigen::Index> map(side);
  for (Eigen::Index idx = 0; idx < side; ++idx) {
    Eigen::Index acc = 0;
    for (std::size_t p = 0; p < order.size(); ++p) {
      acc += ((idx / old_strides[order[p]]) % dims[order[p]]) * new_strides[p];
    }
    map[idx] = acc;
  }
  const Matrix& m = op.matrix();
  Matrix out(side, side);
  for (Eigen::Index c = 0; c < side; ++c) {
    for (Eigen::Index r = 0; r < side; ++r) out(map[r], map[c]) = m(r, c);
  }
  return {std::move(new_dims), std::move(out)};
}

Spectrum hermitian_spectrum(const MultipartiteOperator& op, double rel_tol) {
  return hermitian_spectrum(op.matrix(), rel_tol);
}

Spectrum hermitian_spectrum(const Matrix& m, double rel_tol) {
  require_hermitian(m, rel_tol);
  const Eigen::Index n = m.rows();
  const Matrix h = (m + m.adjoint()) * 0.5;

  DisjointSets sets(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) {
      if (h(r, c) != Complex{0.0, 0.0}) sets.unite(r, c);
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks(n);
  for (Eigen::Index i = 0; i < n; ++i) blocks[sets.find(i)].push_back(i);

  Spectrum spec;
  spec.eigenvalues.reserve(n);
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    if (block.size() == 1) {
      spec.eigenvalues.push_back(h(block[0], block[0]).real());
      continue;
    }
    const auto k = static_cast<Eigen::Index>(block.size());
    Matrix sub(k, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (Eigen::Index r = 0; r < k; ++r) sub(r, c) = h(block[r], block[c]);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sub, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < k; ++i) spec.eigenvalues.push_back(solver.eigenvalues()(i));
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<>());
  return spec;
}

Spectrum hermitian_spectrum_dense(const Matrix& m, double rel_tol) {
  require_hermitian(m, rel_tol);
  const Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  Spectrum spec;
  spec.eigenvalues.assign(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<>());
  return spec;
}

SvdFactors svd_factors(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("svd_factors: matrix is not square");
  // Two-sided Jacobi: Eigen 3.4.0's BDCSVD returns wrong factors for some of
  // the permutation-like ring operators, and Jacobi is also faster on them.
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

MultipartiteOperator operator_abs(const MultipartiteOperator& op) {
  const SvdFactors f = svd_factors(op.matrix());
  Matrix abs = f.right * f.singular_values.cast<Complex>().asDiagonal() * f.right.adjoint();
  return {op.dims(), std::move(abs)};
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double shannon_entropy(std::span<const double> probabilities, double tol) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p < -tol) {
      throw NegativeEigenvalueError("entropy: negative weight " + std::to_string(p) +
                                    " beyond tolerance " + std::to_string(tol));
    }
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const MultipartiteOperator& op, double tol) {
  return von_neumann_entropy(op.matrix(), tol);
}

double von_neumann_entropy(const Matrix& m, double tol) {
  const Spectrum spec = hermitian_spectrum(m);
  if (std::abs(spec.sum() - 1.0) > 1e-8) {
    throw std::domain_error("von_neumann_entropy: trace " + std::to_string(spec.sum()) +
                            " differs from 1");
  }
  return shannon_entropy(spec.eigenvalues, tol);
}

void write_operator_json(std::ostream& out, const MultipartiteOperator& op) {
  const Matrix& m = op.matrix();
  std::string buf;
  buf.reserve(1 << 16);
  buf += "{\"dims\":[";
  for (std::size_t i = 0; i < op.dims().size(); ++i) {
    if (i) buf += ',';
    buf += std::to_string(op.dims()[i]);
  }
  buf += "],";
  for (int part = 0; part < 2; ++part) {
    buf += part == 0 ? "\"re\":[" : ",\"im\":[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      buf += r ? ",[" : "[";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c) buf += ',';
        append_number(buf, part == 0 ? m(r, c).real() : m(r, c).imag());
      }
      buf += ']';
      if (buf.size() > (1u << 20)) {
        out << buf;
        buf.clear();
      }
    }
    buf += ']';
  }
  buf += "}\n";
  out << buf;
}

MultipartiteOperator read_operator_json(std::istream& in) {
  const auto j = nlohmann::json::parse(in);
  auto dims = j.at("dims").get<std::vector<int>>();
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  const Eigen::Index side = product_of_dims(dims);
  if (static_cast<Eigen::Index>(re.size()) != side || static_cast<Eigen::Index>(im.size()) != side) {
    throw DimensionError("operator JSON: row count does not match dims");
  }
  Matrix m(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    if (static_cast<Eigen::Index>(re[r].size()) != side ||
        static_cast<Eigen::Index>(im[r].size()) != side) {
      throw DimensionError("operator JSON: ragged row " + std::to_string(r));
    }
    for (Eigen::Index c = 0; c < side; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return {std::move(dims), std::move(m)};
}

}  // namespace wlike
