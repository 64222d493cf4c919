#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "tailx/tpdm.hpp"

namespace tailx {

/// Real p x q coefficient matrix for constructions driven by independent
/// regularly varying noise. Only the entrywise nonnegative part matters in
/// the tail; every column must have at least one strictly positive entry.
struct CoefMatrix {
  Eigen::MatrixXd entries;  // p x q
  double alpha = 2.0;

  CoefMatrix(Eigen::MatrixXd a, double tail_index = 2.0);

  Eigen::Index dim() const { return entries.rows(); }
  Eigen::Index n_terms() const { return entries.cols(); }

  /// Entrywise max(A, 0).
  Eigen::MatrixXd nonneg() const { return entries.cwiseMax(0.0); }
};

/// Discrete measure on the nonnegative L2 unit sphere: unit-norm points
/// (rows) with positive masses.
struct AngularMeasure {
  Eigen::MatrixXd points;  // k x p, unit rows, nonnegative
  Eigen::VectorXd masses;  // k, positive

  AngularMeasure(Eigen::MatrixXd pts, Eigen::VectorXd m);

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  double total_mass() const { return masses.sum(); }
};

struct TailSample {
  Eigen::MatrixXd values;  // n x p
  std::uint64_t seed = 0;
  double alpha = 2.0;      // per-margin noise tail index (unit Frechet)
};

/// The angular measure of the construction A o Z: one mass point per
/// column j at a_j^(0)/|a_j^(0)| with mass |a_j^(0)|^alpha. Columns with
/// identical normalized nonnegative parts are kept separate.
AngularMeasure angular_of_construction(const CoefMatrix& a);

/// Columns m_j^{1/alpha} w_j: the coefficient matrix whose construction has
/// exactly this angular measure (passthrough inverse of the above).
CoefMatrix coef_of_angular(const AngularMeasure& h, double alpha = 2.0);

/// Merges mass points closer than tol (L2), summing masses; the first
/// point of each cluster is kept as representative.
AngularMeasure merge_points(const AngularMeasure& h, double tol = 1e-9);

/// Closed-form dependence matrix of A o Z for alpha = 2:
/// Sigma = A^(0) (A^(0))^T. Throws for alpha != 2.
Tpdm tpdm_of_construction(const CoefMatrix& a,
                          std::vector<std::string> names = {});

/// Simulates n rows of A o Z = t(A t^{-1}(Z)) with Z i.i.d. unit Frechet
/// with the matrix's tail index (inverse CDF z = (-log U)^{-1/alpha}).
/// Deterministic given the seed.
TailSample simulate_construction(const CoefMatrix& a, std::size_t n,
                                 std::uint64_t seed);

/// Componentwise maxima x_i = max_j a_ij Z_j, sharing the angular measure
/// of A o Z. Requires A >= 0 entrywise.
TailSample simulate_max_linear(const CoefMatrix& a, std::size_t n,
                               std::uint64_t seed);

/// Limit-measure value of the joint exceedance region
/// {x : x_i > u_i for all i}: sum_j m_j min_i (w_ij/u_i)^alpha.
double joint_exceedance(const AngularMeasure& h, const Eigen::VectorXd& u,
                        double alpha);
double joint_exceedance(const CoefMatrix& a, const Eigen::VectorXd& u);

/// Limit-measure value of the union region [0, u]^c:
/// sum_j m_j max_i (w_ij/u_i)^alpha.
double union_exceedance(const AngularMeasure& h, const Eigen::VectorXd& u,
                        double alpha);
double union_exceedance(const CoefMatrix& a, const Eigen::VectorXd& u);

/// Discretizes a continuous angular density on the nonnegative unit sphere
/// into q cells (equal-angle arcs for p = 2; recursive octant-triangle
/// subdivision for p = 3, which rounds q up to the next power of 4) and
/// returns the coefficient matrix with columns m_j^{1/alpha} w_j. Cells
/// where the integrated mass vanishes are dropped.
CoefMatrix discretize_angular(
    const std::function<double(const Eigen::VectorXd&)>& density,
    Eigen::Index p, Eigen::Index q, double alpha = 2.0);

}  // namespace tailx
