#include "tailx/tpdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailx/dataset.hpp"

namespace tailx {

namespace {

void require_nonnegative(const Eigen::MatrixXd& sample) {
  if (sample.hasNaN()) {
    throw std::invalid_argument("sample contains NaN");
  }
  if ((sample.array() < 0.0).any()) {
    throw std::invalid_argument("sample has negative entries");
  }
}

double quantile_sorted(const std::vector<double>& sorted, double level) {
  // Linear interpolation between order statistics (type 7).
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * level;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

Tpdm Tpdm::from_matrix(Eigen::MatrixXd sigma, std::vector<std::string> names,
                       std::size_t n_exc, std::optional<double> r0) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
    throw std::invalid_argument("tpdm: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("tpdm: matrix is not symmetric");
  }
  if (sigma.minCoeff() < -1e-12 * scale) {
    throw std::invalid_argument("tpdm: entries must be nonnegative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma,
                                                    Eigen::EigenvaluesOnly);
  const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-8 * std::max(lmax, 1e-300)) {
    throw std::invalid_argument("tpdm: matrix is not positive semidefinite");
  }
  if (names.empty()) {
    names = default_names(sigma.rows());
  } else if (static_cast<Eigen::Index>(names.size()) != sigma.rows()) {
    throw std::invalid_argument("tpdm: name count mismatch");
  }
  Tpdm t;
  t.total_mass = sigma.trace();
  t.sigma = std::move(sigma);
  t.n_exc = n_exc;
  t.r0 = r0;
  t.names = std::move(names);
  return t;
}

double radial_quantile(const Eigen::MatrixXd& sample, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("radial_quantile: level must be in (0, 1)");
  }
  if (sample.rows() < 1) {
    throw std::invalid_argument("radial_quantile: empty sample");
  }
  require_nonnegative(sample);
  std::vector<double> radii(static_cast<std::size_t>(sample.rows()));
  for (Eigen::Index t = 0; t < sample.rows(); ++t) {
    radii[static_cast<std::size_t>(t)] = sample.row(t).norm();
  }
  std::sort(radii.begin(), radii.end());
  return quantile_sorted(radii, level);
}

ExceedanceSet radial_exceedances(const Eigen::MatrixXd& sample, double r0) {
  require_nonnegative(sample);
  if (!(r0 >= 0.0)) {
    throw std::invalid_argument("radial_exceedances: r0 must be >= 0");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index t = 0; t < sample.rows(); ++t) {
    const double r = sample.row(t).norm();
    if (r == 0.0) {
      throw std::domain_error("radial_exceedances: row " + std::to_string(t) +
                              " has zero radius");
    }
    if (r > r0) keep.push_back(t);  // strict, ties at r0 excluded
  }
  ExceedanceSet exc;
  exc.r0 = r0;
  exc.n_samp = static_cast<std::size_t>(sample.rows());
  exc.radii.resize(static_cast<Eigen::Index>(keep.size()));
  exc.angles.resize(static_cast<Eigen::Index>(keep.size()), sample.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const double r = sample.row(keep[i]).norm();
    exc.radii[static_cast<Eigen::Index>(i)] = r;
    exc.angles.row(static_cast<Eigen::Index>(i)) = sample.row(keep[i]) / r;
  }
  return exc;
}

Tpdm tpdm_from_exceedances(const ExceedanceSet& exc,
                           std::optional<double> known_mass,
                           std::vector<std::string> names) {
  const auto n_exc = static_cast<std::size_t>(exc.angles.rows());
  if (n_exc < 2) {
    throw std::domain_error("tpdm estimator: fewer than 2 radial exceedances");
  }
  double mass = 0.0;
  if (known_mass) {
    if (!(*known_mass > 0.0)) {
      throw std::invalid_argument("tpdm estimator: mass must be positive");
    }
    mass = *known_mass;
  } else {
    mass = exc.r0 * exc.r0 * static_cast<double>(n_exc) /
           static_cast<double>(exc.n_samp);
  }
  // Second-moment reduction over fixed-size blocks; the summation order is
  // independent of any parallel split.
  const Eigen::Index p = exc.angles.cols();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  constexpr Eigen::Index kBlock = 4096;
  for (Eigen::Index start = 0; start < exc.angles.rows(); start += kBlock) {
    const Eigen::Index len = std::min(kBlock, exc.angles.rows() - start);
    const auto block = exc.angles.middleRows(start, len);
    acc += block.transpose() * block;
  }
  Eigen::MatrixXd sigma = (mass / static_cast<double>(n_exc)) * acc;
  sigma = ((sigma + sigma.transpose()) / 2.0).eval();
  return Tpdm::from_matrix(std::move(sigma), std::move(names), n_exc, exc.r0);
}

Tpdm estimate_tpdm(const Eigen::MatrixXd& sample, double r0,
                   std::optional<double> known_mass,
                   std::vector<std::string> names) {
  return tpdm_from_exceedances(radial_exceedances(sample, r0), known_mass,
                               std::move(names));
}

Tpdm estimate_tpdm_quantile(const Eigen::MatrixXd& sample, double level,
                            std::optional<double> known_mass,
                            std::vector<std::string> names) {
  return estimate_tpdm(sample, radial_quantile(sample, level), known_mass,
                       std::move(names));
}

bool asymptotically_independent(const Tpdm& t, Eigen::Index i, Eigen::Index k,
                                double tol) {
  if (i < 0 || k < 0 || i >= t.dim() || k >= t.dim()) {
    throw std::out_of_range("asymptotically_independent: index out of range");
  }
  return std::abs(t.sigma(i, k)) <= tol;
}

double marginal_scale(const Tpdm& t, Eigen::Index i) {
  if (i < 0 || i >= t.dim()) {
    throw std::out_of_range("marginal_scale: index out of range");
  }
  return std::sqrt(t.sigma(i, i));
}

}  // namespace tailx
