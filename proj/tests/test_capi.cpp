#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "tailx.h"

// Exercises the shared-library surface end to end: handles, error codes,
// and the json/csv artifacts, without touching the C++ internals.

namespace {
struct TempPath {
  std::string path;
  explicit TempPath(const char* name) : path(name) {}
  ~TempPath() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(tailx_version()) > 0);
  CHECK(std::string(tailx_status_name(TAILX_OK)) == "ok");
  CHECK(std::string(tailx_status_name(TAILX_ERR_DOMAIN)) == "domain_error");
}

TEST_CASE("scalar and vector transform calls") {
  double x = 0.0;
  REQUIRE(tailx_softplus(0.0, &x) == TAILX_OK);
  CHECK(x == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  double y = 0.0;
  REQUIRE(tailx_softplus_inv(x, &y) == TAILX_OK);
  CHECK(y == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(tailx_softplus_inv(-1.0, &y) == TAILX_ERR_DOMAIN);
  CHECK(std::strlen(tailx_last_error()) > 0);

  const double a[4] = {1.0, 1.0, 1.0, 0.0};  // row-major 2x2
  const double v[2] = {x, x};                // additive zero
  double out[2] = {0, 0};
  REQUIRE(tailx_mat_apply(a, 2, 2, v, out) == TAILX_OK);
  CHECK(out[0] == doctest::Approx(x).epsilon(1e-14));

  double ip = 0.0;
  const double zeros[2] = {0.0, 0.0};
  CHECK(tailx_inner_product(zeros, zeros, 2, &ip) == TAILX_ERR_DOMAIN);
  const double y34[2] = {3.0, 4.0};
  double x2[2];
  REQUIRE(tailx_vec_softplus(y34, 2, x2) == TAILX_OK);
  REQUIRE(tailx_inner_product(x2, x2, 2, &ip) == TAILX_OK);
  CHECK(ip == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("construction to estimation to decomposition through handles") {
  const double entries[6] = {1, 1, 0, 1, 0, 1};  // 2x3
  tailx_coef* coef = nullptr;
  REQUIRE(tailx_coef_create(entries, 2, 3, 2.0, &coef) == TAILX_OK);
  CHECK(tailx_coef_rows(coef) == 2);
  CHECK(tailx_coef_cols(coef) == 3);

  tailx_angular* ang = nullptr;
  REQUIRE(tailx_coef_angular(coef, &ang) == TAILX_OK);
  CHECK(tailx_angular_size(ang) == 3);
  CHECK(tailx_angular_total_mass(ang) == doctest::Approx(4.0));

  tailx_tpdm* closed = nullptr;
  REQUIRE(tailx_tpdm_from_coef(coef, &closed) == TAILX_OK);
  double v = 0.0;
  REQUIRE(tailx_tpdm_value(closed, 0, 1, &v) == TAILX_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(tailx_tpdm_value(closed, 0, 7, &v) == TAILX_ERR_INDEX);

  tailx_dataset* sample = nullptr;
  REQUIRE(tailx_simulate(coef, 50000, 42, &sample) == TAILX_OK);
  CHECK(tailx_dataset_rows(sample) == 50000);

  tailx_tpdm* est = nullptr;
  REQUIRE(tailx_estimate_tpdm(sample, 1, 0.98, 4.0, &est) == TAILX_OK);
  CHECK(tailx_tpdm_n_exc(est) == 1000);
  double r0 = 0.0;
  CHECK(tailx_tpdm_r0(est, &r0) == 1);
  CHECK(r0 > 0.0);

  tailx_eigen* eig = nullptr;
  REQUIRE(tailx_eigen_decompose(closed, &eig) == TAILX_OK);
  double lam = 0.0;
  REQUIRE(tailx_eigen_lambda(eig, 0, &lam) == TAILX_OK);
  CHECK(lam == doctest::Approx(3.0).epsilon(1e-12));

  tailx_dataset* scores = nullptr;
  REQUIRE(tailx_project(sample, eig, &scores) == TAILX_OK);
  CHECK(tailx_dataset_cols(scores) == 2);
  CHECK(std::string(tailx_dataset_name(scores, 0)) == "pc1");

  tailx_dataset* recon = nullptr;
  REQUIRE(tailx_reconstruct(scores, eig, 2, &recon) == TAILX_OK);
  double orig = 0, back = 0;
  REQUIRE(tailx_dataset_value(sample, 7, 1, &orig) == TAILX_OK);
  REQUIRE(tailx_dataset_value(recon, 7, 1, &back) == TAILX_OK);
  CHECK(back == doctest::Approx(orig).epsilon(1e-8));

  double pos = 0, neg = 0;
  REQUIRE(tailx_balance_diagnostic(scores, 0, 1, 0.98, &pos, &neg) ==
          TAILX_OK);
  CHECK(pos >= 0.0);
  CHECK(neg >= 0.0);

  tailx_cpfact* fact = nullptr;
  REQUIRE(tailx_cp_factorize(closed, 0, 1e-8, 5000, 20, 9, &fact) == TAILX_OK);
  CHECK(tailx_cpfact_converged(fact) == 1);
  CHECK(tailx_cpfact_residual(fact) < 1e-8);

  tailx_coef* coef2 = nullptr;
  REQUIRE(tailx_cpfact_to_coef(fact, &coef2) == TAILX_OK);
  const double u[2] = {1.0, 1.0};
  double joint = 0, uni = 0;
  REQUIRE(tailx_joint_exceedance(coef2, u, 2, &joint) == TAILX_OK);
  REQUIRE(tailx_union_exceedance(coef2, u, 2, &uni) == TAILX_OK);
  CHECK(joint <= uni);
  // at unit thresholds the union is bounded by the total mass
  CHECK(uni <= 4.0 + 1e-6);
  CHECK(uni >= 2.0 - 1e-6);

  tailx_coef_free(coef2);
  tailx_cpfact_free(fact);
  tailx_dataset_free(recon);
  tailx_dataset_free(scores);
  tailx_eigen_free(eig);
  tailx_tpdm_free(est);
  tailx_dataset_free(sample);
  tailx_tpdm_free(closed);
  tailx_angular_free(ang);
  tailx_coef_free(coef);
}

TEST_CASE("json save and load through the C surface") {
  const double entries[2] = {3, 4};
  tailx_coef* coef = nullptr;
  REQUIRE(tailx_coef_create(entries, 2, 1, 2.0, &coef) == TAILX_OK);
  tailx_tpdm* t = nullptr;
  REQUIRE(tailx_tpdm_from_coef(coef, &t) == TAILX_OK);

  TempPath file("capi_tpdm.json");
  REQUIRE(tailx_tpdm_save_json(t, file.path.c_str()) == TAILX_OK);
  tailx_tpdm* t2 = nullptr;
  REQUIRE(tailx_tpdm_load_json(file.path.c_str(), &t2) == TAILX_OK);
  CHECK(tailx_tpdm_total_mass(t2) == doctest::Approx(25.0));

  CHECK(tailx_tpdm_load_json("definitely_missing.json", &t2) == TAILX_ERR_IO);

  tailx_tpdm_free(t2);
  tailx_tpdm_free(t);
  tailx_coef_free(coef);
}

TEST_CASE("error codes match the failure families") {
  tailx_coef* coef = nullptr;
  const double bad[2] = {-1, -2};
  CHECK(tailx_coef_create(bad, 2, 1, 2.0, &coef) == TAILX_ERR_INVALID);
  CHECK(std::string(tailx_last_error()).find("column") != std::string::npos);

  const double ok[2] = {1, 2};
  REQUIRE(tailx_coef_create(ok, 2, 1, 2.0, &coef) == TAILX_OK);
  double out = 0.0;
  const double negu[2] = {1, -1};
  CHECK(tailx_joint_exceedance(coef, negu, 2, &out) == TAILX_ERR_INVALID);
  tailx_coef_free(coef);

  double alpha = 0.0;
  const double small[3] = {1, 2, 3};
  CHECK(tailx_hill(small, 3, 2, &alpha) == TAILX_ERR_DOMAIN);
  CHECK(tailx_softplus(0.0, nullptr) == TAILX_ERR_INVALID);
}

TEST_CASE("marginal pipelines through the C surface") {
  const size_t n = 3000;
  std::vector<double> values(n * 2);
  uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (size_t i = 0; i < n; ++i) {
    values[2 * i] = next() - 0.5;
    values[2 * i + 1] = -std::pow(next() + 1e-12, -1.0 / 3.0);
  }
  const char* names[2] = {"alpha", "beta"};
  tailx_dataset* ds = nullptr;
  REQUIRE(tailx_dataset_create(names, values.data(), n, 2, &ds) == TAILX_OK);

  tailx_marginals* fre = nullptr;
  tailx_dataset* fre_out = nullptr;
  REQUIRE(tailx_fit_frechet(ds, &fre, &fre_out) == TAILX_OK);
  CHECK(tailx_dataset_rows(fre_out) == n);

  tailx_marginals* loss = nullptr;
  tailx_dataset* loss_out = nullptr;
  REQUIRE(tailx_fit_loss(ds, 0.99, &loss, &loss_out) == TAILX_OK);

  TempPath file("capi_marginals.json");
  REQUIRE(tailx_marginals_save_json(loss, file.path.c_str()) == TAILX_OK);
  tailx_marginals* loaded = nullptr;
  REQUIRE(tailx_marginals_load_json(file.path.c_str(), &loaded) == TAILX_OK);

  tailx_dataset* replay = nullptr;
  size_t clamped = 0;
  REQUIRE(tailx_marginals_apply(loaded, ds, &replay, &clamped) == TAILX_OK);
  double a = 0, b = 0;
  REQUIRE(tailx_dataset_value(loss_out, 10, 1, &a) == TAILX_OK);
  REQUIRE(tailx_dataset_value(replay, 10, 1, &b) == TAILX_OK);
  CHECK(a == b);

  tailx_dataset_free(replay);
  tailx_marginals_free(loaded);
  tailx_dataset_free(loss_out);
  tailx_marginals_free(loss);
  tailx_dataset_free(fre_out);
  tailx_marginals_free(fre);
  tailx_dataset_free(ds);
}
