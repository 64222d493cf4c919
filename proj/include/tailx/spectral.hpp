#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "tailx/tpdm.hpp"

namespace tailx {

/// Ordered eigendecomposition of a dependence matrix. Eigenvalues descend,
/// eigenvector columns are orthonormal with a deterministic sign (the
/// largest-magnitude entry of each column is positive, so no column is
/// entrywise nonpositive), and `basis` holds the transformed eigenvectors
/// e_i = t(u_i), orthonormal under the transformed-space inner product.
struct EigenBasis {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd u;      // p x p, columns are eigenvectors
  Eigen::MatrixXd basis;  // p x p, columns e_i = t(u_i)
  std::vector<std::string> names;

  Eigen::Index dim() const { return u.rows(); }
};

EigenBasis eigen_decompose(const Tpdm& t);

/// Scores v_t = U^T t^{-1}(x_t), one row per observation. Rows must be
/// strictly positive and finite.
Eigen::MatrixXd project(const Eigen::MatrixXd& rows, const EigenBasis& basis);

/// Partial reconstruction from the k leading basis directions:
/// t(U_{.,1..k} v_{1..k}). k = p restores the observation exactly.
Eigen::VectorXd reconstruct(const Eigen::VectorXd& scores,
                            const EigenBasis& basis, Eigen::Index k);
Eigen::MatrixXd reconstruct_rows(const Eigen::MatrixXd& scores,
                                 const EigenBasis& basis, Eigen::Index k);

/// U^T Sigma U; equals diag(lambda) when the basis comes from this matrix.
Eigen::MatrixXd pc_dependence(const Tpdm& t, const EigenBasis& basis);

/// The two signed halves of the score-angle cross moment for the pair
/// (i, k): estimates of the integrals of w_i w_k over {w_i w_k > 0} and of
/// -w_i w_k over {w_i w_k < 0}, using score rows whose radius exceeds the
/// given quantile. The two values estimate the same limit.
std::pair<double, double> balance_diagnostic(const Eigen::MatrixXd& scores,
                                             Eigen::Index i, Eigen::Index k,
                                             double r0_quantile);

/// Signed empirical second-moment matrix of the score angles above the
/// radial quantile, scaled by the known mass when provided (else by the
/// empirical mass r0^2 n_exc / n).
Eigen::MatrixXd score_moments(const Eigen::MatrixXd& scores,
                              double r0_quantile,
                              std::optional<double> known_mass);

}  // namespace tailx
