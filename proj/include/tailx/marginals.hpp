#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tailx/dataset.hpp"

namespace tailx {

/// Nonparametric marginal transform to unit-scale tail index 2:
/// g(x) = (-log F(x))^{-1/2} through the linearly interpolated empirical
/// CDF at plotting positions k/(n+1) (midranks for ties).
struct EcdfFrechetModel {
  std::vector<double> ref_values;     // strictly increasing
  std::vector<double> ref_positions;  // matching positions in (0, 1)
};

/// Loss-tail transform: negate returns, clamp gains to zero, softplus,
/// then a power/scale adjustment x -> c^{-1/2} x^{alpha/2} so the output
/// has tail index 2 and scale 1.
struct LossHillModel {
  double alpha_hat = 0.0;
  double c_hat = 0.0;
  double threshold_quantile = 0.0;
};

struct MarginalModel {
  std::string name;
  std::variant<EcdfFrechetModel, LossHillModel> model;
};

struct MarginalSet {
  std::vector<MarginalModel> models;
};

struct TransformResult {
  Eigen::VectorXd values;
  std::size_t n_clamped = 0;  // queries outside the reference range
};

EcdfFrechetModel fit_ecdf_frechet(const Eigen::VectorXd& column);
TransformResult apply_ecdf_frechet(const EcdfFrechetModel& model,
                                   const Eigen::VectorXd& column);

/// Fit-and-apply convenience; output is strictly positive, unit scale.
Eigen::VectorXd ecdf_frechet_transform(const Eigen::VectorXd& column);

/// Hill tail-index estimate from the k largest order statistics:
/// alpha_hat = [k^{-1} sum_j log(x_(n-j+1) / x_(n-k))]^{-1}. Requires
/// strictly positive data and k >= 10.
double hill_estimate(const Eigen::VectorXd& column, std::size_t k);

/// Same with k resolved as the number of exceedances of the empirical
/// quantile at the given level.
double hill_estimate_quantile(const Eigen::VectorXd& column, double level);

/// t(max(-r, 0)): gains collapse to t(0) = log 2, large losses keep their
/// magnitude, and the output is bounded away from zero.
Eigen::VectorXd loss_pretransform(const Eigen::VectorXd& returns);

/// c^{-1/2} x^{alpha/2}: maps a tail-index-alpha, scale-c column to tail
/// index 2, scale 1.
Eigen::VectorXd rescale_alpha2(const Eigen::VectorXd& column, double alpha_hat,
                               double c_hat);

LossHillModel fit_loss_hill(const Eigen::VectorXd& returns,
                            double hill_quantile);
Eigen::VectorXd apply_loss_hill(const LossHillModel& model,
                                const Eigen::VectorXd& returns);

struct PipelineResult {
  MarginalSet models;
  Dataset transformed;
};

/// Per-column empirical Frechet transform of a dataset.
PipelineResult frechet_pipeline(const Dataset& data);

/// Per-column loss pipeline: pretransform, Hill at the given quantile,
/// tail-scale estimate c = (k/n) u^alpha at the Hill threshold u, rescale.
PipelineResult loss_pipeline(const Dataset& data, double hill_quantile);

struct ApplyResult {
  Dataset transformed;
  std::size_t n_clamped = 0;
};

/// Replays fitted marginal models on new data with matching columns.
ApplyResult apply_marginals(const MarginalSet& models, const Dataset& data);

}  // namespace tailx
