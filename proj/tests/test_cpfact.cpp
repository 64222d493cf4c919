#include <doctest.h>

#include <cmath>

#include "tailx/cpfact.hpp"
#include "tailx/rng.hpp"

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

TEST_CASE("cp-rank bound") {
  CHECK(cp_rank_bound(2) == 3);
  CHECK(cp_rank_bound(4) == 10);
  CHECK(cp_rank_bound(5) == 11);
  CHECK(cp_rank_bound(10) == 51);
}

TEST_CASE("identity factorizes to a permutation") {
  const auto t = Tpdm::from_matrix(Eigen::MatrixXd::Identity(5, 5));
  CpOptions opts;
  opts.q = 5;
  opts.seed = 1;
  opts.tol = 1e-12;  // the exact solution supports a tight target
  const auto f = cp_factorize(t, opts);
  CHECK(f.converged);
  CHECK(f.residual < 1e-10);
  CHECK(f.a.minCoeff() >= 0.0);
  // each column is (numerically) a unit axis vector
  for (Eigen::Index j = 0; j < 5; ++j) {
    CHECK(f.a.col(j).norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(f.a.col(j).maxCoeff() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("the 2x2 example admits a width-3 factor") {
  const auto t = Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2}));
  CpOptions opts;
  opts.q = 3;
  opts.seed = 7;
  const auto f = cp_factorize(t, opts);
  CHECK(f.converged);
  CHECK(f.residual < 1e-8);
  CHECK((f.a * f.a.transpose() - t.sigma).norm() ==
        doctest::Approx(f.residual).epsilon(1e-12));
}

TEST_CASE("planted nonnegative factor is recovered") {
  Rng rng(21);
  const Eigen::MatrixXd g = rng.normal_matrix(5, 8).cwiseAbs();
  const auto t = Tpdm::from_matrix(
      ((g * g.transpose() + (g * g.transpose()).transpose()) / 2.0).eval());
  CpOptions opts;
  opts.q = 8;
  opts.seed = 3;
  const auto f = cp_factorize(t, opts);
  CHECK(f.converged);
  CHECK(f.residual < 1e-8);
  CHECK(f.restarts_used <= 20);
}

TEST_CASE("determinism: identical inputs give identical outputs") {
  Rng rng(23);
  const Eigen::MatrixXd g = rng.normal_matrix(4, 6).cwiseAbs();
  const auto t = Tpdm::from_matrix(
      ((g * g.transpose() + (g * g.transpose()).transpose()) / 2.0).eval());
  CpOptions opts;
  opts.q = 8;
  opts.seed = 99;
  const auto f1 = cp_factorize(t, opts);
  const auto f2 = cp_factorize(t, opts);
  CHECK((f1.a - f2.a).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f1.residual == f2.residual);
  CHECK(f1.iterations == f2.iterations);

  // different seeds give different factors of the same product
  opts.seed = 100;
  const auto f3 = cp_factorize(t, opts);
  CHECK((f1.a - f3.a).cwiseAbs().maxCoeff() > 1e-8);
  CHECK((f1.a * f1.a.transpose() - f3.a * f3.a.transpose())
            .cwiseAbs()
            .maxCoeff() < 1e-7);
}

TEST_CASE("option validation") {
  const auto t = Tpdm::from_matrix(Eigen::MatrixXd::Identity(4, 4));
  CpOptions opts;
  opts.q = 3;  // below rank
  CHECK_THROWS_AS(cp_factorize(t, opts), std::invalid_argument);
  opts.q = 200;  // above the cp-rank bound
  CHECK_THROWS_AS(cp_factorize(t, opts), std::invalid_argument);
}

TEST_CASE("rank search finds the minimal width for the identity") {
  const auto t = Tpdm::from_matrix(Eigen::MatrixXd::Identity(3, 3));
  CpOptions per_q;
  per_q.seed = 5;
  const auto f = cp_rank_search(t, 1, 6, per_q);
  CHECK(f.converged);
  CHECK(f.a.cols() == 3);  // q = rank is the first that can work
  CHECK_THROWS_AS(cp_rank_search(t, 4, 2, per_q), std::invalid_argument);
}

TEST_CASE("rank search on a planted instance stays within the planted width") {
  Rng rng(29);
  const Eigen::MatrixXd g = rng.normal_matrix(5, 8).cwiseAbs();
  const auto t = Tpdm::from_matrix(
      ((g * g.transpose() + (g * g.transpose()).transpose()) / 2.0).eval());
  CpOptions per_q;
  per_q.seed = 11;
  per_q.restarts = 10;
  const auto f = cp_rank_search(t, 5, 11, per_q);
  CHECK(f.converged);
  CHECK(f.a.cols() <= 8);
}

TEST_CASE("diagonally dominant nonnegative matrices factorize") {
  // a known completely positive class
  Rng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const Eigen::Index p = 4 + rep % 3;
    Eigen::MatrixXd s = rng.normal_matrix(p, p).cwiseAbs();
    s = ((s + s.transpose()) / 2.0).eval();
    for (Eigen::Index i = 0; i < p; ++i) {
      s(i, i) = s.row(i).sum() + 0.5;  // strictly dominant
    }
    const auto t = Tpdm::from_matrix(std::move(s));
    CpOptions opts;
    opts.seed = static_cast<std::uint64_t>(rep);
    const auto f = cp_factorize(t, opts);
    CHECK(f.converged);
    CHECK(f.residual <= opts.tol * (1.0 + t.sigma.norm()));
  }
}

TEST_CASE("construction from a factorized matrix round trips") {
  const auto t = Tpdm::from_matrix(mat(2, 2, {2, 1, 1, 2}));
  CpOptions opts;
  opts.seed = 13;
  const auto coef = construct_from_tpdm(t, opts);
  CHECK(coef.alpha == 2.0);
  const auto back = tpdm_of_construction(coef);
  CHECK((back.sigma - t.sigma).norm() < 1e-8);

  // restart-to-restart non-uniqueness with a shared product
  CpOptions o1 = opts, o2 = opts;
  o1.restarts = 1;
  o2.restarts = 1;
  o2.seed = 14;
  const auto c1 = construct_from_tpdm(t, o1);
  const auto c2 = construct_from_tpdm(t, o2);
  const auto t1 = tpdm_of_construction(c1);
  const auto t2 = tpdm_of_construction(c2);
  CHECK((t1.sigma - t2.sigma).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("best-so-far residual is monotone across restart budgets") {
  Rng rng(37);
  const Eigen::MatrixXd g = rng.normal_matrix(6, 7).cwiseAbs();
  const auto t = Tpdm::from_matrix(
      ((g * g.transpose() + (g * g.transpose()).transpose()) / 2.0).eval());
  CpOptions small, big;
  small.q = big.q = 9;
  small.seed = big.seed = 17;
  small.restarts = 3;
  big.restarts = 12;
  small.max_iter = big.max_iter = 300;  // keep some restarts short of target
  const auto fs = cp_factorize(t, small);
  const auto fb = cp_factorize(t, big);
  CHECK(fb.residual <= fs.residual + 1e-15);
}
