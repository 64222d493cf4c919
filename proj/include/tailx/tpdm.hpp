#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tailx {

/// Tail pairwise dependence matrix: the matrix of second cross-moments of
/// the angular measure, for tail index 2 under the L2 radial/angular split.
/// Symmetric, positive semidefinite, entrywise nonnegative, and its trace
/// equals the total mass of the angular measure.
struct Tpdm {
  Eigen::MatrixXd sigma;
  double total_mass = 0.0;
  std::size_t n_exc = 0;              // exceedances used; 0 for closed form
  std::optional<double> r0;           // radial threshold; absent closed form
  std::vector<std::string> names;

  Eigen::Index dim() const { return sigma.rows(); }

  /// Validates the structural invariants (symmetry 1e-12, smallest
  /// eigenvalue >= -1e-8 * largest, trace == total_mass within 1e-8,
  /// nonnegative entries) and throws std::invalid_argument on violation.
  static Tpdm from_matrix(Eigen::MatrixXd sigma,
                          std::vector<std::string> names = {},
                          std::size_t n_exc = 0,
                          std::optional<double> r0 = std::nullopt);
};

/// Radial/angular split of the rows whose L2 radius strictly exceeds r0.
struct ExceedanceSet {
  Eigen::VectorXd radii;    // r_t > r0
  Eigen::MatrixXd angles;   // rows w_t = x_t / r_t
  double r0 = 0.0;
  std::size_t n_samp = 0;
};

/// Empirical quantile (linear interpolation between order statistics) of
/// the rowwise L2 radii of a nonnegative sample.
double radial_quantile(const Eigen::MatrixXd& sample, double level);

ExceedanceSet radial_exceedances(const Eigen::MatrixXd& sample, double r0);

/// The exceedance estimator of the dependence matrix:
///   sigma_hat_ik = m_hat / n_exc * sum_t w_ti w_tk 1(r_t > r0).
/// With known_mass set, m_hat is that value (preprocessed unit-scale data
/// has m = p); otherwise the empirical m_hat = r0^2 n_exc / n_samp is used.
/// Requires a nonnegative sample, no zero-radius rows, and at least two
/// exceedances.
Tpdm estimate_tpdm(const Eigen::MatrixXd& sample, double r0,
                   std::optional<double> known_mass,
                   std::vector<std::string> names = {});

/// Same, with r0 resolved as the empirical quantile of the radii.
Tpdm estimate_tpdm_quantile(const Eigen::MatrixXd& sample, double level,
                            std::optional<double> known_mass,
                            std::vector<std::string> names = {});

Tpdm tpdm_from_exceedances(const ExceedanceSet& exc,
                           std::optional<double> known_mass,
                           std::vector<std::string> names = {});

/// True iff |sigma_ik| <= tol: a zero entry is equivalent to asymptotic
/// independence of the pair.
bool asymptotically_independent(const Tpdm& t, Eigen::Index i, Eigen::Index k,
                                double tol);

/// Scale of margin i: sqrt(sigma_ii).
double marginal_scale(const Tpdm& t, Eigen::Index i);

}  // namespace tailx
