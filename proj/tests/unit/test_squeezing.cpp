#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "wlike/squeezing.hpp"
#include "wlike/state_family.hpp"

using namespace wlike;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::Matrix4cd pattern(double a, double b, double c, double d, double norm) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = a / norm;
  m(1, 1) = m(2, 2) = b / norm;
  m(1, 2) = m(2, 1) = c / norm;
  m(3, 3) = d / norm;
  return m;
}

std::vector<int> shield_of(const MultipartiteOperator& pair) {
  std::vector<int> s;
  for (int i = 2; i < static_cast<int>(pair.num_subsystems()); ++i) s.push_back(i);
  return s;
}

struct Fixture {
  StateFamilyParams params = make_family_params(3, 2);
  MultipartiteOperator rho = build_rho(params);
  Matrix x = build_X(params).matrix();
};

}  // namespace

TEST_CASE("pair reduction shape and key statistics") {
  Fixture f;
  const auto pair = reduce_to_pair(f.rho, f.params, 1, 2);
  CHECK(pair.side() == 256);
  CHECK(pair.dims().size() == 8);
  CHECK(pair.trace().real() == doctest::Approx(1.0));
  const auto key = partial_trace(pair, shield_of(pair));
  const double expected[4] = {13.0 / 36, 10.0 / 36, 10.0 / 36, 3.0 / 36};
  for (int i = 0; i < 4; ++i) CHECK(key.matrix()(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-12));

  CHECK_THROWS_AS(reduce_to_pair(f.rho, f.params, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_to_pair(f.rho, f.params, 0, 2), std::out_of_range);
}

TEST_CASE("reversing the pair swaps the key qubits") {
  Fixture f;
  const auto forward = reduce_to_pair(f.rho, f.params, 1, 3);
  const auto backward = reduce_to_pair(f.rho, f.params, 3, 1);
  std::vector<int> order(forward.num_subsystems());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::swap(order[0], order[1]);
  CHECK(max_abs(permute_subsystems(forward, order).matrix() - backward.matrix()) == 0.0);
}

TEST_CASE("twisting blocks are unitary and turn X into its trace norm") {
  Fixture f;
  const auto t = build_twisting(f.x);
  const auto s = t.shield_side();
  CHECK(s == 64);
  for (const auto& u : t.blocks) CHECK(max_abs(u * u.adjoint() - Matrix::Identity(s, s)) < 1e-12);
  const Complex overlap = (t[KeyLabel::k01] * f.x * t[KeyLabel::k10].adjoint()).trace();
  CHECK(std::abs(overlap - Complex(trace_norm(f.x))) < 1e-12);
}

TEST_CASE("numeric squeeze equals the closed form for every pair") {
  Fixture f;
  const auto t = build_twisting(f.x);
  const Eigen::Matrix4cd expected = pattern(13, 10, 2, 3, 36);
  for (auto [k, l] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 2}}) {
    const auto squeezed = privacy_squeeze(reduce_to_pair(f.rho, f.params, k, l), t);
    CHECK((squeezed - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto closed = xstate_closed_form(3, 2);
  CHECK(closed.a == 13);
  CHECK(closed.b == 10);
  CHECK(closed.c == 2);
  CHECK(closed.d == 3);
  CHECK(closed.norm == 36);
}

TEST_CASE("numeric squeeze equals the closed form at N=4") {
  const auto p = make_family_params(4, 2);
  const auto rho = build_rho(p);
  const auto t = build_twisting(build_X(p).matrix());
  const auto closed = xstate_closed_form(4, 2);
  CHECK(closed.norm == doctest::Approx(92.0));
  const auto squeezed = privacy_squeeze(reduce_to_pair(rho, p, 2, 3), t);
  CHECK((squeezed - pattern(44, 22, 2, 4, 92)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((squeezed - closed.density()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("closed-form X state") {
  for (int n : {3, 4, 5, 7}) {
    for (double d : {2.0, 17.0, 4096.0}) {
      const auto x = xstate_closed_form(n, d);
      CHECK(x.a + 2 * x.b + x.d == doctest::Approx(x.norm).epsilon(1e-14));
      if (n == 3) CHECK(x.norm == doctest::Approx(6 * (d + 4)));
    }
    const auto big = xstate_closed_form(n, 1e9);
    CHECK(big.a / big.norm == doctest::Approx((n - 2.0) / n).epsilon(1e-6));
  }
  CHECK_THROWS_AS(xstate_closed_form(2, 2), std::invalid_argument);
}

TEST_CASE("twisting does not change the key-basis diagonal") {
  Fixture f;
  const auto t = build_twisting(f.x);
  const auto pair = reduce_to_pair(f.rho, f.params, 1, 2);
  const Matrix u = t.full_matrix();
  const MultipartiteOperator twisted(pair.dims(), u * pair.matrix() * u.adjoint());
  const auto before = partial_trace(pair, shield_of(pair));
  const auto after = partial_trace(twisted, shield_of(pair));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(before.matrix()(i, i) - after.matrix()(i, i)) < 1e-13);

  const auto squeezed = privacy_squeeze(pair, t);
  CHECK(std::abs(squeezed(0, 0) - before.matrix()(0, 0)) < 1e-13);
  CHECK(std::abs(squeezed(3, 3) - before.matrix()(3, 3)) < 1e-13);
}

TEST_CASE("identity twisting of a product state returns the key marginal") {
  std::mt19937_64 rng(21);
  const MultipartiteOperator key({2, 2}, oracle::random_density(4, 4, rng));
  const MultipartiteOperator shield({3}, oracle::random_density(3, 3, rng));
  Twisting id;
  for (auto& b : id.blocks) b = Matrix::Identity(3, 3);
  const Eigen::Matrix4cd squeezed = privacy_squeeze(tensor(key, shield), id);
  const Eigen::Matrix4cd expected = align_coherence_phase(Eigen::Matrix4cd(key.matrix()));
  CHECK((squeezed - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("squeeze does not depend on the SVD basis in a degenerate spectrum") {
  Fixture f;
  const auto factors = svd_factors(f.x);
  // All singular values coincide at D=2, so W Q and V Q is another valid SVD.
  const double spread = factors.singular_values.maxCoeff() - factors.singular_values.minCoeff();
  REQUIRE(spread < 1e-12);
  std::mt19937_64 rng(22);
  const Matrix q = oracle::random_isometry(64, 64, rng);
  Twisting alt;
  alt.blocks[0] = alt.blocks[3] = Matrix::Identity(64, 64);
  alt.blocks[1] = (factors.left * q).adjoint();
  alt.blocks[2] = (factors.right * q).adjoint();
  const auto pair = reduce_to_pair(f.rho, f.params, 2, 3);
  CHECK((privacy_squeeze(pair, alt) - pattern(13, 10, 2, 3, 36)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("filtering the key qubits commutes with squeezing") {
  Fixture f;
  const auto t = build_twisting(f.x);
  const auto pair = reduce_to_pair(f.rho, f.params, 1, 2);
  for (double eps : {0.3, 0.7}) {
    Eigen::VectorXd k(4);
    k << eps * eps, eps, eps, 1.0;
    Matrix kraus = Matrix::Zero(256, 256);
    for (int i = 0; i < 4; ++i) kraus.block(64 * i, 64 * i, 64, 64).diagonal().setConstant(k(i));
    const Matrix filtered = kraus * pair.matrix() * kraus.adjoint();
    const double q = filtered.trace().real();
    const Eigen::Matrix4cd left = privacy_squeeze(MultipartiteOperator(pair.dims(), filtered / q), t);

    const Eigen::Matrix4cd squeezed = privacy_squeeze(pair, t);
    const Eigen::Matrix4cd kk = k.cast<Complex>().asDiagonal();
    Eigen::Matrix4cd right = kk * squeezed * kk;
    right /= right.trace();
    CHECK((left - right).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("squeeze validates its input shape") {
  Fixture f;
  const auto t = build_twisting(f.x);
  CHECK_THROWS_AS(privacy_squeeze(MultipartiteOperator::identity({2, 2, 3}), t), DimensionError);
  CHECK_THROWS_AS(privacy_squeeze(MultipartiteOperator::identity({4, 64}), t), DimensionError);
}
