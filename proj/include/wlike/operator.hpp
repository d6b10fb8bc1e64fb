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

#ifndef WLIKE_OPERATOR_HPP
#define WLIKE_OPERATOR_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wlike {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default absolute tolerance on eigenvalues (positivity, clipping).
inline constexpr double kEigenTolerance = 1e-10;
/// Relative tolerance for the Hermiticity check: max|M - M^dag| <= tol * max|M|.
inline constexpr double kHermitianTolerance = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NegativeEigenvalueError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A square complex matrix acting on a tensor product of subsystems.
///
/// Subsystem 0 is the most significant factor of the row/column index, so the
/// matrix of `tensor({A, B})` is the Kronecker product A (x) B.
class MultipartiteOperator {
 public:
  MultipartiteOperator() = default;
  MultipartiteOperator(std::vector<int> dims, Matrix entries);

  static MultipartiteOperator identity(std::vector<int> dims);
  static MultipartiteOperator zero(std::vector<int> dims);
  /// |v><v| with the given subsystem structure.
  static MultipartiteOperator projector(const Vector& v, std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return entries_; }
  Matrix& matrix() { return entries_; }
  Eigen::Index side() const { return entries_.rows(); }
  std::size_t num_subsystems() const { return dims_.size(); }

  Complex trace() const { return entries_.trace(); }
  /// max|M - M^dag|.
  double hermiticity_residual() const;
  bool is_hermitian(double rel_tol = kHermitianTolerance) const;

 private:
  std::vector<int> dims_;
  Matrix entries_;
};

/// Eigenvalues of a Hermitian operator, sorted in descending order.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
  double max() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double sum() const;
  double abs_sum() const;
};

struct SvdFactors {
  Matrix left;                    // W
  Eigen::VectorXd singular_values;  // descending, nonnegative
  Matrix right;                   // V, so that op = W diag(s) V^dag
};

/// Product of the entries of `dims`; throws on non-positive dimensions.
Eigen::Index product_of_dims(std::span<const int> dims);

/// Kronecker product of the operators in list order; dims are concatenated.
MultipartiteOperator tensor(std::span<const MultipartiteOperator> ops);
MultipartiteOperator tensor(const MultipartiteOperator& a, const MultipartiteOperator& b);

/// Partial transpose on the listed subsystems. Indices are zero-based.
MultipartiteOperator partial_transpose(const MultipartiteOperator& op,
                                       std::span<const int> subsystems);

/// Traces out the listed subsystems; the remaining subsystems keep their
/// relative order. Tracing every subsystem yields a 1x1 operator.
MultipartiteOperator partial_trace(const MultipartiteOperator& op,
                                   std::span<const int> subsystems);

/// Reorders subsystems: subsystem `order[p]` of `op` becomes subsystem p of
/// the result.
MultipartiteOperator permute_subsystems(const MultipartiteOperator& op,
                                        std::span<const int> order);

/// Real spectrum of a Hermitian operator. The input is symmetrized first and
/// split into decoupled diagonal blocks (connected components of its
/// nonzero pattern), each solved densely.
Spectrum hermitian_spectrum(const MultipartiteOperator& op,
                            double rel_tol = kHermitianTolerance);
Spectrum hermitian_spectrum(const Matrix& m, double rel_tol = kHermitianTolerance);

/// Same spectrum through a single dense eigensolve of the whole matrix.
Spectrum hermitian_spectrum_dense(const Matrix& m, double rel_tol = kHermitianTolerance);

SvdFactors svd_factors(const Matrix& m);

/// sqrt(A^dag A), via the SVD.
MultipartiteOperator operator_abs(const MultipartiteOperator& op);

/// Sum of singular values.
double trace_norm(const Matrix& m);
inline double trace_norm(const MultipartiteOperator& op) { return trace_norm(op.matrix()); }

/// Von Neumann entropy in bits of a positive operator of unit trace.
/// Eigenvalues in [-tol, 0] are clipped to zero.
double von_neumann_entropy(const MultipartiteOperator& op, double tol = kEigenTolerance);
double von_neumann_entropy(const Matrix& m, double tol = kEigenTolerance);
/// -sum p log2 p over an explicit distribution (same clipping rule).
double shannon_entropy(std::span<const double> probabilities, double tol = kEigenTolerance);

/// Writes {"dims":[...],"re":[[...]],"im":[[...]]} with round-trip precision.
void write_operator_json(std::ostream& out, const MultipartiteOperator& op);
MultipartiteOperator read_operator_json(std::istream& in);

}  // namespace wlike

#endif  // WLIKE_OPERATOR_HPP
