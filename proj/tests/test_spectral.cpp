#include <doctest.h>

#include <cmath>

#include "tailx/construct.hpp"
#include "tailx/rng.hpp"
#include "tailx/spectral.hpp"
#include "tailx/transform.hpp"

using namespace tailx;

namespace {
Eigen::MatrixXd mat(Eigen::Index p, Eigen::Index q,
                    std::initializer_list<double> v) {
  Eigen::MatrixXd m(p, q);
  Eigen::Index i = 0;
  for (double x : v) m(i / q, i % q) = x, ++i;
  return m;
}

Tpdm random_psd(Rng& rng, Eigen::Index p) {
  const Eigen::MatrixXd g = rng.normal_matrix(p, p).cwiseAbs();
  Eigen::MatrixXd s = g * g.transpose();
  s = ((s + s.transpose()) / 2.0).eval();
  return Tpdm::from_matrix(std::move(s));
}
}  // namespace

TEST_CASE("analytic 2x2 eigendecomposition") {
  const auto basis = eigen_decompose(Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2})));
  CHECK(basis.lambdas[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(basis.lambdas[1] == doctest::Approx(1.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(basis.u(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(basis.u(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  // sign rule: the largest-magnitude entry of the second column is positive
  CHECK(basis.u(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(basis.u(1, 1) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
  // transformed basis vectors
  CHECK(basis.basis(0, 0) ==
        doctest::Approx(softplus(inv_sqrt2)).epsilon(1e-12));
}

TEST_CASE("identity input returns the identity under the tie rule") {
  const auto basis =
      eigen_decompose(Tpdm::from_matrix(Eigen::MatrixXd::Identity(4, 4)));
  CHECK((basis.u - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((basis.lambdas.array() == 1.0).all());
}

TEST_CASE("no eigenvector column is entrywise nonpositive") {
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto basis = eigen_decompose(random_psd(rng, 6));
    for (Eigen::Index j = 0; j < 6; ++j) {
      CHECK(basis.u.col(j).maxCoeff() > 0.0);
    }
    // orthonormal within tolerance
    CHECK((basis.u.transpose() * basis.u - Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }
}

TEST_CASE("eigenvalue sum preserves the trace") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto t = random_psd(rng, 5);
    const auto basis = eigen_decompose(t);
    CHECK(basis.lambdas.sum() ==
          doctest::Approx(t.sigma.trace()).epsilon(1e-10));
  }
}

TEST_CASE("transformed basis is orthonormal under the space inner product") {
  Rng rng(7);
  const auto basis = eigen_decompose(random_psd(rng, 4));
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double ip =
          inner_product(basis.basis.col(i).eval(), basis.basis.col(j).eval());
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("projection of basis vectors and of the additive zero") {
  const auto basis = eigen_decompose(Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2})));
  // e_k projects to the k-th unit score
  for (Eigen::Index k = 0; k < 2; ++k) {
    const Eigen::MatrixXd row = basis.basis.col(k).transpose();
    const Eigen::MatrixXd v = project(row, basis);
    for (Eigen::Index j = 0; j < 2; ++j) {
      CHECK(v(0, j) == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
  // additive zero projects to the origin
  const Eigen::MatrixXd zero_row = additive_zero(2).transpose();
  CHECK(project(zero_row, basis).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd bad(1, 2);
  bad << 0.0, 1.0;
  CHECK_THROWS_AS(project(bad, basis), std::domain_error);
}

TEST_CASE("projection and reconstruction round trip") {
  Rng rng(11);
  const auto basis = eigen_decompose(random_psd(rng, 5));
  const Eigen::MatrixXd y = rng.normal_matrix(40, 5);
  const Eigen::MatrixXd rows = softplus(y);
  const Eigen::MatrixXd scores = project(rows, basis);
  const Eigen::MatrixXd back = reconstruct_rows(scores, basis, 5);
  CHECK((back - rows).cwiseAbs().maxCoeff() < 1e-8);

  // k = 1 with a single leading coefficient is a scalar multiple of e_1
  Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
  v[0] = 2.5;
  const Eigen::VectorXd xk = reconstruct(v, basis, 1);
  const Eigen::VectorXd direct = tl_scale(2.5, basis.basis.col(0).eval());
  CHECK((xk - direct).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(reconstruct(v, basis, 0), std::out_of_range);
  CHECK_THROWS_AS(reconstruct(v, basis, 6), std::out_of_range);
}

TEST_CASE("truncation error is nonincreasing in k") {
  Rng rng(13);
  const auto basis = eigen_decompose(random_psd(rng, 6));
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::VectorXd y = rng.normal_matrix(6, 1);
    const Eigen::VectorXd x = softplus(y);
    const Eigen::VectorXd v =
        project(x.transpose(), basis).row(0).transpose();
    double prev = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k <= 6; ++k) {
      const Eigen::VectorXd xk = reconstruct(v, basis, k);
      const double err = (softplus_inv(xk) - y).norm();
      CHECK(err <= prev + 1e-10);
      prev = err;
    }
    CHECK(prev < 1e-8);  // exact at k = p
  }
}

TEST_CASE("score dependence matrix is diagonal with the eigenvalues") {
  const auto t = Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2}));
  const auto basis = eigen_decompose(t);
  const Eigen::MatrixXd d = pc_dependence(t, basis);
  CHECK(d(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(d(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(d(0, 1)) < 1e-12);

  const auto eye = Tpdm::from_matrix(Eigen::MatrixXd::Identity(3, 3));
  const auto eb = eigen_decompose(eye);
  CHECK((pc_dependence(eye, eb) - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("balance diagnostic on symmetric scores") {
  // scores symmetric under sign flip of the second coordinate: both signed
  // sums are equal by construction
  Rng rng(17);
  const Eigen::Index n = 4000;
  Eigen::MatrixXd scores(2 * n, 2);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double a = rng.frechet2();
    const double b = rng.frechet2();
    scores(2 * t, 0) = a;
    scores(2 * t, 1) = b;
    scores(2 * t + 1, 0) = a;
    scores(2 * t + 1, 1) = -b;
  }
  const auto [pos, neg] = balance_diagnostic(scores, 0, 1, 0.95);
  CHECK(pos == doctest::Approx(neg).epsilon(1e-10));
  CHECK(pos > 0.0);

  CHECK_THROWS_AS(balance_diagnostic(scores, 1, 1, 0.95),
                  std::invalid_argument);
  CHECK_THROWS_AS(balance_diagnostic(scores, 0, 2, 0.95), std::out_of_range);
}

TEST_CASE("comonotone construction: second score direction carries nothing") {
  const CoefMatrix a(mat(2, 1, {1, 1}));
  const auto s = simulate_construction(a, 20000, 19);
  const auto t = tpdm_of_construction(a);
  const auto basis = eigen_decompose(t);
  const Eigen::MatrixXd v = project(s.values, basis);
  const auto [pos, neg] = balance_diagnostic(v, 0, 1, 0.95);
  CHECK(pos < 1e-8);
  CHECK(neg < 1e-8);
}
