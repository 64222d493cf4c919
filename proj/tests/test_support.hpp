#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

// Shared helpers for the test suites. Everything here is deliberately
// independent of the library's estimation path so it can serve as an
// oracle.
namespace testsup {

inline double rel_err(double observed, double expected) {
  return std::abs(observed - expected) / std::max(1.0, std::abs(expected));
}

inline double quantile(std::vector<double> v, double level) {
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * level;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

inline std::vector<double> row_radii(const Eigen::MatrixXd& m) {
  std::vector<double> r(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    r[static_cast<std::size_t>(i)] = m.row(i).norm();
  }
  return r;
}

// Brute-force empirical second moment of the angular parts above the
// radial quantile, scaled by the given mass: the independent oracle for
// the dependence-matrix estimator.
inline Eigen::MatrixXd empirical_tpdm(const Eigen::MatrixXd& sample,
                                      double quantile_level, double mass) {
  const auto radii = row_radii(sample);
  const double r0 = quantile(radii, quantile_level);
  const Eigen::Index p = sample.cols();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  std::size_t n_exc = 0;
  for (Eigen::Index t = 0; t < sample.rows(); ++t) {
    const double r = radii[static_cast<std::size_t>(t)];
    if (r > r0) {
      ++n_exc;
      const Eigen::VectorXd w = sample.row(t).transpose() / r;
      acc += w * w.transpose();
    }
  }
  return (mass / static_cast<double>(n_exc)) * acc;
}

// Monte Carlo estimate of the limit measure of {x : x_i > s*u_i for all i}
// (all = true) or of the union region (all = false), at scaling level s:
// nu_hat = s^2 * P_hat(X in s*C).
inline double mc_measure(const Eigen::MatrixXd& sample,
                         const Eigen::VectorXd& u, double s, bool all) {
  std::size_t count = 0;
  for (Eigen::Index t = 0; t < sample.rows(); ++t) {
    bool hit = all;
    for (Eigen::Index i = 0; i < sample.cols(); ++i) {
      const bool over = sample(t, i) > s * u[i];
      if (all) {
        hit = hit && over;
      } else {
        hit = hit || over;
      }
    }
    count += hit ? 1 : 0;
  }
  return s * s * static_cast<double>(count) /
         static_cast<double>(sample.rows());
}

}  // namespace testsup
