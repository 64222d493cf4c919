#include <doctest.h>

#include <cmath>

#include "tailx/construct.hpp"
#include "tailx/tpdm.hpp"
#include "test_support.hpp"

using namespace tailx;

namespace {
Eigen::MatrixXd mat(Eigen::Index p, Eigen::Index q,
                    std::initializer_list<double> v) {
  Eigen::MatrixXd m(p, q);
  Eigen::Index i = 0;
  for (double x : v) m(i / q, i % q) = x, ++i;
  return m;
}
}  // namespace

TEST_CASE("from_matrix enforces the structural invariants") {
  CHECK_NOTHROW(Tpdm::from_matrix(Eigen::MatrixXd::Identity(3, 3)));
  CHECK_THROWS_AS(Tpdm::from_matrix(mat(2, 2, {1, 0.5, 0.4, 1})),
                  std::invalid_argument);  // asymmetric
  CHECK_THROWS_AS(Tpdm::from_matrix(mat(2, 2, {1, -0.5, -0.5, 1})),
                  std::invalid_argument);  // negative entry
  CHECK_THROWS_AS(Tpdm::from_matrix(mat(2, 2, {1, 2, 2, 1})),
                  std::invalid_argument);  // not PSD
  const auto t = Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2}));
  CHECK(t.total_mass == doctest::Approx(4.0));
  CHECK(t.names.size() == 2);
  CHECK(t.names[0] == "x1");
}

TEST_CASE("estimator reproduces hand-evaluated cases") {
  // two exceedances on the axes, mass 2: the identity
  Eigen::MatrixXd sample(4, 2);
  sample << 10, 0.0001, 0.0001, 10, 0.5, 0.5, 0.3, 0.2;
  const auto t = estimate_tpdm(sample, 5.0, 2.0);
  CHECK(t.n_exc == 2);
  CHECK(t.sigma(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t.sigma(1, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t.sigma(0, 1) == doctest::Approx(0.0).epsilon(1e-4));

  // all exceedances on the diagonal direction
  Eigen::MatrixXd diag_sample(3, 2);
  diag_sample << 8, 8, 12, 12, 0.1, 0.1;
  const auto td = estimate_tpdm(diag_sample, 5.0, 2.0);
  CHECK(td.sigma(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(td.sigma(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(td.sigma(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimator preconditions and errors") {
  Eigen::MatrixXd sample(3, 2);
  sample << 1, 2, 3, 4, 5, 6;
  CHECK_THROWS_AS(estimate_tpdm(sample, 100.0, 2.0), std::domain_error);
  Eigen::MatrixXd neg(2, 2);
  neg << 1, -2, 3, 4;
  CHECK_THROWS_AS(estimate_tpdm(neg, 0.5, 2.0), std::invalid_argument);
  Eigen::MatrixXd zero_row(3, 2);
  zero_row << 1, 2, 0, 0, 3, 4;
  CHECK_THROWS_AS(estimate_tpdm(zero_row, 0.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(radial_quantile(sample, 1.5), std::invalid_argument);
}

TEST_CASE("empirical mass mode: trace equals the mass estimate exactly") {
  Eigen::MatrixXd sample(6, 2);
  sample << 10, 1, 1, 10, 8, 3, 2, 2, 0.5, 0.7, 0.2, 0.1;
  const double r0 = 4.0;
  const auto t = estimate_tpdm(sample, r0, std::nullopt);
  const double m_hat =
      r0 * r0 * static_cast<double>(t.n_exc) / static_cast<double>(6);
  CHECK(t.sigma.trace() == doctest::Approx(m_hat).epsilon(1e-14));
  CHECK(t.total_mass == doctest::Approx(m_hat).epsilon(1e-14));
  CHECK(t.r0.has_value());
  CHECK(*t.r0 == r0);
}

TEST_CASE("estimator output is PSD and completely positive by construction") {
  const CoefMatrix a(mat(3, 4, {1, 0.5, 0, 0.2, 0, 1, 0.7, 0.2, 0.3, 0, 1, 0.2}));
  const auto s = simulate_construction(a, 20000, 51);
  const auto exc = radial_exceedances(s.values,
                                      radial_quantile(s.values, 0.95));
  const auto t = tpdm_from_exceedances(exc, std::nullopt);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.sigma);
  CHECK(es.eigenvalues().minCoeff() >=
        -1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()));

  // the observed angles are an (inefficient) nonnegative factorization
  const double scale = std::sqrt(t.total_mass / static_cast<double>(t.n_exc));
  const Eigen::MatrixXd a_star = scale * exc.angles.transpose();
  CHECK((a_star * a_star.transpose() - t.sigma).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(a_star.minCoeff() >= 0.0);
}

TEST_CASE("quantile thresholds and strict exceedance") {
  Eigen::MatrixXd sample(5, 1);
  sample << 1, 2, 3, 4, 5;
  CHECK(radial_quantile(sample, 0.5) == doctest::Approx(3.0));
  const auto exc = radial_exceedances(sample, 3.0);
  CHECK(exc.radii.size() == 2);  // ties at the threshold are excluded
}

TEST_CASE("asymptotic independence check and marginal scales") {
  const auto eye = Tpdm::from_matrix(Eigen::MatrixXd::Identity(2, 2));
  CHECK(asymptotically_independent(eye, 0, 1, 1e-12));
  const auto dep = Tpdm::from_matrix(mat(2, 2, {1, 1, 1, 1}));
  CHECK_FALSE(asymptotically_independent(dep, 0, 1, 1e-12));
  CHECK_THROWS_AS(asymptotically_independent(dep, 0, 5, 0.1),
                  std::out_of_range);

  for (Eigen::Index i = 0; i < 2; ++i) {
    CHECK(marginal_scale(eye, i) == doctest::Approx(1.0));
  }
  const auto t34 = tpdm_of_construction(CoefMatrix(mat(2, 1, {3, 4})));
  CHECK(marginal_scale(t34, 0) == doctest::Approx(3.0));
  CHECK(marginal_scale(t34, 1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(marginal_scale(t34, 2), std::out_of_range);
}

TEST_CASE("independent margins estimate as asymptotically independent") {
  // the off-diagonal bias of the estimator decays like 1/r0, so this check
  // needs a deep threshold before it clears tol = 0.05
  const CoefMatrix eye(Eigen::MatrixXd::Identity(2, 2));
  const auto s = simulate_construction(eye, 100000, 77);
  const auto t = estimate_tpdm_quantile(s.values, 0.9998, 2.0);
  CHECK(asymptotically_independent(t, 0, 1, 0.05));
  // at a shallow threshold the same pair is measurably biased upward
  const auto shallow = estimate_tpdm_quantile(s.values, 0.98, 2.0);
  CHECK(shallow.sigma(0, 1) > t.sigma(0, 1));
}
