#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "wlike/operator.hpp"

using namespace wlike;

namespace {

Matrix diag_of(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

// Z^Gamma for the 2x2 Hadamard: sum u_ij |ij><ji|.
MultipartiteOperator hadamard_z_gamma() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = h;
  m(1, 2) = h;
  m(2, 1) = h;
  m(3, 3) = -h;
  return {{2, 2}, m};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("tensor of identities is the identity") {
  const auto t = tensor(MultipartiteOperator::identity({2}), MultipartiteOperator::identity({3}));
  CHECK(t.dims() == std::vector<int>{2, 3});
  CHECK(max_abs(t.matrix() - Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("tensor of diagonals multiplies entries in lexicographic order") {
  const auto t = tensor(MultipartiteOperator({2}, diag_of({1, 2})), MultipartiteOperator({2}, diag_of({3, 4})));
  CHECK(max_abs(t.matrix() - diag_of({3, 4, 6, 8})) == 0.0);
}

TEST_CASE("three ring factors give a 64x64 operator with 64 nonzeros") {
  const auto z = hadamard_z_gamma();
  const std::vector<MultipartiteOperator> factors{z, z, z};
  const auto t = tensor(factors);
  CHECK(t.side() == 64);
  CHECK(t.dims().size() == 6);
  long nonzero = 0;
  for (long r = 0; r < 64; ++r)
    for (long c = 0; c < 64; ++c) nonzero += t.matrix()(r, c) != Complex(0.0);
  CHECK(nonzero == 64);
}

TEST_CASE("partial transpose of the Hadamard ring factor on its second qubit") {
  const auto z = hadamard_z_gamma();
  const int second[] = {1};
  const auto zt = partial_transpose(z, second);
  const double h = 1.0 / std::sqrt(2.0);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = h;
  expected(0, 3) = h;
  expected(3, 0) = h;
  expected(3, 3) = -h;
  CHECK(max_abs(zt.matrix() - expected) < 1e-15);
}

TEST_CASE("partial transpose leaves diagonal operators alone") {
  const MultipartiteOperator d({2, 3}, diag_of({1, 2, 3, 4, 5, 6}));
  const int first[] = {0};
  CHECK(max_abs(partial_transpose(d, first).matrix() - d.matrix()) == 0.0);
}

TEST_CASE("partial transpose matches the element-wise oracle") {
  std::mt19937_64 rng(11);
  const std::vector<int> dims{2, 3, 2};
  const Matrix m = oracle::random_matrix(12, 12, rng);
  const MultipartiteOperator op(dims, m);
  for (const std::set<int>& sub : {std::set<int>{0}, std::set<int>{1}, std::set<int>{0, 2}, std::set<int>{0, 1, 2}}) {
    const std::vector<int> list(sub.begin(), sub.end());
    CHECK(max_abs(partial_transpose(op, list).matrix() - oracle::partial_transpose(m, dims, sub)) == 0.0);
  }
}

TEST_CASE("partial transpose is an involution on random operators") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> dims{dim(rng), dim(rng), dim(rng)};
    const auto side = product_of_dims(dims);
    const MultipartiteOperator op(dims, oracle::random_matrix(side, side, rng));
    std::vector<int> sub;
    for (int s = 0; s < 3; ++s)
      if (rng() & 1) sub.push_back(s);
    const auto twice = partial_transpose(partial_transpose(op, sub), sub);
    CHECK(max_abs(twice.matrix() - op.matrix()) == 0.0);
  }
}

TEST_CASE("partial transpose rejects subsystems out of range") {
  const auto id = MultipartiteOperator::identity({2, 2});
  const int bad[] = {2};
  CHECK_THROWS_AS(partial_transpose(id, bad), DimensionError);
}

TEST_CASE("partial trace examples") {
  const MultipartiteOperator a({2}, diag_of({1, 2}));
  const MultipartiteOperator b({3}, diag_of({1, 1, 3}));
  const int second[] = {1};
  const auto reduced = partial_trace(tensor(a, b), second);
  CHECK(reduced.dims() == std::vector<int>{2});
  CHECK(max_abs(reduced.matrix() - 5.0 * a.matrix()) < 1e-15);

  const int first[] = {0};
  const auto half = partial_trace(MultipartiteOperator::identity({2, 2}), first);
  CHECK(max_abs(half.matrix() - 2.0 * Matrix::Identity(2, 2)) == 0.0);

  const int both[] = {0, 1};
  const auto scalar = partial_trace(tensor(a, b), both);
  CHECK(scalar.side() == 1);
  CHECK(std::abs(scalar.matrix()(0, 0) - Complex(15.0)) < 1e-14);
}

TEST_CASE("partial trace matches the summation oracle") {
  std::mt19937_64 rng(13);
  const std::vector<int> dims{2, 3, 2};
  const Matrix m = oracle::random_matrix(12, 12, rng);
  const MultipartiteOperator op(dims, m);
  for (const std::set<int>& sub : {std::set<int>{1}, std::set<int>{0, 2}, std::set<int>{2}}) {
    const std::vector<int> list(sub.begin(), sub.end());
    CHECK(max_abs(partial_trace(op, list).matrix() - oracle::partial_trace(m, dims, sub)) < 1e-13);
  }
}

TEST_CASE("permuting subsystems swaps tensor factors") {
  std::mt19937_64 rng(14);
  const MultipartiteOperator a({2}, oracle::random_matrix(2, 2, rng));
  const MultipartiteOperator b({3}, oracle::random_matrix(3, 3, rng));
  const int order[] = {1, 0};
  const auto swapped = permute_subsystems(tensor(a, b), order);
  CHECK(swapped.dims() == std::vector<int>{3, 2});
  CHECK(max_abs(swapped.matrix() - tensor(b, a).matrix()) < 1e-15);
}

TEST_CASE("hermitian spectrum examples") {
  const auto s = hermitian_spectrum(diag_of({3, 1, 2}));
  CHECK(s.eigenvalues == std::vector<double>{3, 2, 1});

  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto sx = hermitian_spectrum(x);
  CHECK(sx.max() == doctest::Approx(1.0));
  CHECK(sx.min() == doctest::Approx(-1.0));

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_spectrum(bad), NotHermitianError);
}

TEST_CASE("block spectrum agrees with the dense eigensolver") {
  std::mt19937_64 rng(15);
  // Scattered block structure: three blocks on a shuffled index set.
  const int n = 24;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix m = Matrix::Zero(n, n);
  for (int block = 0; block < 3; ++block) {
    const Matrix h = oracle::random_hermitian(8, rng);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) m(perm[8 * block + r], perm[8 * block + c]) = h(r, c);
  }
  for (const Matrix& probe : {m, oracle::random_hermitian(n, rng)}) {
    const auto fast = hermitian_spectrum(probe);
    const auto dense = hermitian_spectrum_dense(probe);
    REQUIRE(fast.eigenvalues.size() == dense.eigenvalues.size());
    for (std::size_t i = 0; i < dense.eigenvalues.size(); ++i) {
      CHECK(std::abs(fast.eigenvalues[i] - dense.eigenvalues[i]) < 1e-12);
    }
  }
}

TEST_CASE("operator absolute value and trace norm") {
  const auto abs = operator_abs(MultipartiteOperator({2}, diag_of({-2, 3})));
  CHECK(max_abs(abs.matrix() - diag_of({2, 3})) < 1e-14);
  CHECK(trace_norm(Matrix(Matrix::Identity(5, 5))) == doctest::Approx(5.0));
  CHECK(trace_norm(hadamard_z_gamma()) == doctest::Approx(2.0 * std::sqrt(2.0)));

  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const MultipartiteOperator g({6}, oracle::random_matrix(6, 6, rng));
    const auto a = operator_abs(g);
    CHECK(hermitian_spectrum(a).min() > -1e-12);
    CHECK(std::abs(a.trace().real() - trace_norm(g)) < 1e-10);

    const Matrix h = oracle::random_hermitian(6, rng);
    CHECK(std::abs(trace_norm(h) - hermitian_spectrum(h).abs_sum()) < 1e-10);
  }
}

TEST_CASE("svd factors reconstruct the input") {
  const auto one = svd_factors(diag_of({-1}));
  CHECK(one.singular_values(0) == doctest::Approx(1.0));

  const auto z = svd_factors(hadamard_z_gamma().matrix());
  for (int i = 0; i < 4; ++i) CHECK(z.singular_values(i) == doctest::Approx(1.0 / std::sqrt(2.0)));

  std::mt19937_64 rng(17);
  const Matrix m = oracle::random_matrix(7, 7, rng);
  const auto f = svd_factors(m);
  const Matrix rebuilt = f.left * f.singular_values.cast<Complex>().asDiagonal() * f.right.adjoint();
  CHECK(max_abs(rebuilt - m) < 1e-12);
  CHECK(max_abs(f.left.adjoint() * f.left - Matrix::Identity(7, 7)) < 1e-12);
  CHECK(max_abs(f.right.adjoint() * f.right - Matrix::Identity(7, 7)) < 1e-12);
  for (int i = 1; i < 7; ++i) CHECK(f.singular_values(i - 1) >= f.singular_values(i));
}

TEST_CASE("von Neumann entropy") {
  Vector v = Vector::Zero(2);
  v(0) = 1.0;
  CHECK(von_neumann_entropy(MultipartiteOperator::projector(v, {2})) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(Matrix(Matrix::Identity(2, 2) / 2.0)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(diag_of({0.75, 0.25})) == doctest::Approx(0.811278124459).epsilon(1e-12));
  CHECK(von_neumann_entropy(diag_of({0.5 + 1e-12, 0.5, -1e-12})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(von_neumann_entropy(diag_of({1.1, -0.1})), NegativeEigenvalueError);
}

TEST_CASE("shannon entropy clips tiny negatives only") {
  const double uniform[] = {0.25, 0.25, 0.25, 0.25};
  CHECK(shannon_entropy(uniform) == doctest::Approx(2.0));
  const double tiny[] = {1.0, -1e-13};
  CHECK(shannon_entropy(tiny) == doctest::Approx(0.0));
  const double negative[] = {1.1, -0.1};
  CHECK_THROWS(shannon_entropy(negative));
}

TEST_CASE("operator json round trip is exact") {
  std::mt19937_64 rng(18);
  const MultipartiteOperator op({2, 3}, oracle::random_matrix(6, 6, rng));
  std::stringstream buffer;
  write_operator_json(buffer, op);
  const auto back = read_operator_json(buffer);
  CHECK(back.dims() == op.dims());
  CHECK(max_abs(back.matrix() - op.matrix()) == 0.0);
}

TEST_CASE("operator construction validates shapes") {
  CHECK_THROWS_AS(MultipartiteOperator({2, 2}, Matrix::Zero(3, 3)), DimensionError);
  CHECK_THROWS_AS(MultipartiteOperator({0}, Matrix::Zero(0, 0)), DimensionError);
}
