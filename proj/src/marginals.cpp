#include "tailx/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tailx/transform.hpp"

namespace tailx {

namespace {

void require_positive(const Eigen::VectorXd& x, const char* what) {
  if (!x.allFinite() || !(x.array() > 0.0).all()) {
    throw std::domain_error(std::string(what) +
                            ": values must be finite and > 0");
  }
}

double quantile_of(Eigen::VectorXd v, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("quantile level must be in (0, 1)");
  }
  std::sort(v.data(), v.data() + v.size());
  const double h = static_cast<double>(v.size() - 1) * level;
  const auto lo = static_cast<Eigen::Index>(h);
  if (lo + 1 >= v.size()) return v[v.size() - 1];
  return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

double frechet_pull(double position) {
  return 1.0 / std::sqrt(-std::log(position));
}

// Hill estimate plus the threshold order statistic x_(n-k) it used.
std::pair<double, double> hill_with_threshold(const Eigen::VectorXd& column,
                                              std::size_t k) {
  require_positive(column, "hill_estimate");
  const auto n = static_cast<std::size_t>(column.size());
  if (k < 10) {
    throw std::domain_error("hill_estimate: needs at least 10 exceedances");
  }
  if (k + 1 > n) {
    throw std::domain_error("hill_estimate: k too large for the sample");
  }
  std::vector<double> x(column.data(), column.data() + column.size());
  std::sort(x.begin(), x.end());
  const double threshold = x[n - k - 1];
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    acc += std::log(x[n - 1 - j] / threshold);
  }
  if (!(acc > 0.0)) {
    throw std::domain_error("hill_estimate: degenerate upper tail (ties)");
  }
  return {static_cast<double>(k) / acc, threshold};
}

}  // namespace

EcdfFrechetModel fit_ecdf_frechet(const Eigen::VectorXd& column) {
  if (column.size() < 2) {
    throw std::invalid_argument("ecdf fit: needs at least 2 observations");
  }
  if (!column.allFinite()) {
    throw std::invalid_argument("ecdf fit: non-finite value");
  }
  const auto n = static_cast<std::size_t>(column.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return column[static_cast<Eigen::Index>(a)] <
           column[static_cast<Eigen::Index>(b)];
  });
  EcdfFrechetModel model;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    const double v = column[static_cast<Eigen::Index>(order[i])];
    while (j < n && column[static_cast<Eigen::Index>(order[j])] == v) ++j;
    // Midrank of the tie group, as a plotting position over n+1.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    model.ref_values.push_back(v);
    model.ref_positions.push_back(midrank / static_cast<double>(n + 1));
    i = j;
  }
  if (model.ref_values.size() < 2) {
    throw std::domain_error("ecdf fit: constant column");
  }
  return model;
}

TransformResult apply_ecdf_frechet(const EcdfFrechetModel& model,
                                   const Eigen::VectorXd& column) {
  const auto& v = model.ref_values;
  const auto& q = model.ref_positions;
  if (v.size() != q.size() || v.size() < 2) {
    throw std::invalid_argument("ecdf apply: malformed model");
  }
  TransformResult out;
  out.values.resize(column.size());
  for (Eigen::Index t = 0; t < column.size(); ++t) {
    const double x = column[t];
    if (std::isnan(x)) throw std::invalid_argument("ecdf apply: NaN value");
    double pos;
    if (x <= v.front()) {
      pos = q.front();
      if (x < v.front()) ++out.n_clamped;
    } else if (x >= v.back()) {
      pos = q.back();
      if (x > v.back()) ++out.n_clamped;
    } else {
      const auto it = std::upper_bound(v.begin(), v.end(), x);
      const auto hi = static_cast<std::size_t>(it - v.begin());
      const double frac = (x - v[hi - 1]) / (v[hi] - v[hi - 1]);
      pos = q[hi - 1] + frac * (q[hi] - q[hi - 1]);
    }
    out.values[t] = frechet_pull(pos);
  }
  return out;
}

Eigen::VectorXd ecdf_frechet_transform(const Eigen::VectorXd& column) {
  return apply_ecdf_frechet(fit_ecdf_frechet(column), column).values;
}

double hill_estimate(const Eigen::VectorXd& column, std::size_t k) {
  return hill_with_threshold(column, k).first;
}

double hill_estimate_quantile(const Eigen::VectorXd& column, double level) {
  require_positive(column, "hill_estimate");
  const double u = quantile_of(column, level);
  const auto k = static_cast<std::size_t>((column.array() > u).count());
  return hill_with_threshold(column, k).first;
}

Eigen::VectorXd loss_pretransform(const Eigen::VectorXd& returns) {
  if (returns.hasNaN()) {
    throw std::invalid_argument("loss_pretransform: NaN value");
  }
  return returns.unaryExpr(
      [](double r) { return softplus(std::max(-r, 0.0)); });
}

Eigen::VectorXd rescale_alpha2(const Eigen::VectorXd& column, double alpha_hat,
                               double c_hat) {
  if (!(alpha_hat > 0.0) || !(c_hat > 0.0)) {
    throw std::invalid_argument("rescale_alpha2: alpha and c must be > 0");
  }
  require_positive(column, "rescale_alpha2");
  const double scale = 1.0 / std::sqrt(c_hat);
  return column.unaryExpr(
      [&](double x) { return scale * std::pow(x, alpha_hat / 2.0); });
}

LossHillModel fit_loss_hill(const Eigen::VectorXd& returns,
                            double hill_quantile) {
  const Eigen::VectorXd x = loss_pretransform(returns);
  const double u_level = quantile_of(x, hill_quantile);
  const auto k = static_cast<std::size_t>((x.array() > u_level).count());
  const auto [alpha, threshold] = hill_with_threshold(x, k);
  LossHillModel model;
  model.alpha_hat = alpha;
  model.threshold_quantile = hill_quantile;
  // Tail-scale companion of the Hill estimator, P(X > x) ~ c x^{-alpha}.
  model.c_hat = static_cast<double>(k) / static_cast<double>(x.size()) *
                std::pow(threshold, alpha);
  return model;
}

Eigen::VectorXd apply_loss_hill(const LossHillModel& model,
                                const Eigen::VectorXd& returns) {
  return rescale_alpha2(loss_pretransform(returns), model.alpha_hat,
                        model.c_hat);
}

PipelineResult frechet_pipeline(const Dataset& data) {
  PipelineResult out;
  out.transformed.names = data.names;
  out.transformed.values.resize(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    MarginalModel m;
    m.name = data.names[static_cast<std::size_t>(j)];
    auto fitted = fit_ecdf_frechet(data.values.col(j));
    out.transformed.values.col(j) =
        apply_ecdf_frechet(fitted, data.values.col(j)).values;
    m.model = std::move(fitted);
    out.models.models.push_back(std::move(m));
  }
  return out;
}

PipelineResult loss_pipeline(const Dataset& data, double hill_quantile) {
  PipelineResult out;
  out.transformed.names = data.names;
  out.transformed.values.resize(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    MarginalModel m;
    m.name = data.names[static_cast<std::size_t>(j)];
    auto fitted = fit_loss_hill(data.values.col(j), hill_quantile);
    out.transformed.values.col(j) = apply_loss_hill(fitted, data.values.col(j));
    m.model = std::move(fitted);
    out.models.models.push_back(std::move(m));
  }
  return out;
}

ApplyResult apply_marginals(const MarginalSet& models, const Dataset& data) {
  if (models.models.size() != static_cast<std::size_t>(data.cols())) {
    throw std::invalid_argument("apply_marginals: column count mismatch");
  }
  ApplyResult out;
  out.transformed.names = data.names;
  out.transformed.values.resize(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const auto& m = models.models[static_cast<std::size_t>(j)].model;
    if (std::holds_alternative<EcdfFrechetModel>(m)) {
      auto res =
          apply_ecdf_frechet(std::get<EcdfFrechetModel>(m), data.values.col(j));
      out.transformed.values.col(j) = res.values;
      out.n_clamped += res.n_clamped;
    } else {
      out.transformed.values.col(j) =
          apply_loss_hill(std::get<LossHillModel>(m), data.values.col(j));
    }
  }
  return out;
}

}  // namespace tailx
