#include "tailx/transform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tailx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_in_space(const Eigen::VectorXd& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || x[i] < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  ": components must be in [0, inf]");
    }
  }
}

// Extended-real sum of a_j * y_j. Infinite terms are tracked by sign;
// 0 * inf and inf - inf raise instead of producing NaN.
double ext_dot(const Eigen::MatrixXd& a, Eigen::Index row,
               const Eigen::VectorXd& y) {
  double acc = 0.0;
  bool pos = false, neg = false;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const double yj = y[j];
    const double aj = a(row, j);
    if (std::isinf(yj)) {
      if (aj == 0.0) {
        throw std::domain_error(
            "transformed-linear combination: indeterminate 0 * inf");
      }
      ((aj > 0.0) == (yj > 0.0) ? pos : neg) = true;
    } else {
      acc += aj * yj;
    }
  }
  if (pos && neg) {
    throw std::domain_error(
        "transformed-linear combination: indeterminate inf - inf");
  }
  if (pos) return kInf;
  if (neg) return -kInf;
  return acc;
}

bool all_finite_preimage(const Eigen::VectorXd& x) {
  return (x.array() > 0.0).all() && (x.array() < kInf).all();
}

}  // namespace

double softplus(double y) {
  if (std::isnan(y)) throw std::invalid_argument("softplus: NaN input");
  if (y == kInf) return kInf;
  if (y == -kInf) return 0.0;
  return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
}

double softplus_inv(double x) {
  if (std::isnan(x)) throw std::invalid_argument("softplus_inv: NaN input");
  if (x < 0.0) throw std::domain_error("softplus_inv: negative input");
  if (x == 0.0) return -kInf;
  if (x == kInf) return kInf;
  return x > 30.0 ? x : std::log(std::expm1(x));
}

Eigen::VectorXd additive_zero(Eigen::Index p) {
  if (p < 1) throw std::invalid_argument("additive_zero: p must be >= 1");
  return Eigen::VectorXd::Constant(p, std::numbers::ln2);
}

Eigen::VectorXd tl_add(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2) {
  if (x1.size() != x2.size()) {
    throw std::invalid_argument("tl_add: length mismatch");
  }
  require_in_space(x1, "tl_add");
  require_in_space(x2, "tl_add");
  Eigen::VectorXd out(x1.size());
  for (Eigen::Index i = 0; i < x1.size(); ++i) {
    const double y1 = softplus_inv(x1[i]);
    const double y2 = softplus_inv(x2[i]);
    if (std::isinf(y1) && std::isinf(y2) && (y1 > 0) != (y2 > 0)) {
      throw std::domain_error("tl_add: indeterminate inf - inf");
    }
    out[i] = softplus(y1 + y2);
  }
  return out;
}

Eigen::VectorXd tl_scale(double a, const Eigen::VectorXd& x) {
  if (std::isnan(a)) throw std::invalid_argument("tl_scale: NaN scalar");
  require_in_space(x, "tl_scale");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double y = softplus_inv(x[i]);
    if (std::isinf(y) && a == 0.0) {
      throw std::domain_error("tl_scale: indeterminate 0 * inf");
    }
    out[i] = softplus(a * y);
  }
  return out;
}

Eigen::VectorXd tl_matmul(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("tl_matmul: dimension mismatch");
  }
  require_in_space(x, "tl_matmul");
  if (all_finite_preimage(x)) {
    return softplus((a * softplus_inv(x)).eval());
  }
  const Eigen::VectorXd y = softplus_inv(x);
  Eigen::VectorXd out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out[i] = softplus(ext_dot(a, i, y));
  }
  return out;
}

Eigen::VectorXd tl_combo(const Eigen::VectorXd& coeffs,
                         const std::vector<Eigen::VectorXd>& basis) {
  if (static_cast<std::size_t>(coeffs.size()) != basis.size() ||
      basis.empty()) {
    throw std::invalid_argument("tl_combo: coefficient/basis count mismatch");
  }
  const Eigen::Index p = basis.front().size();
  Eigen::MatrixXd preimages(p, coeffs.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != p) {
      throw std::invalid_argument("tl_combo: basis vector length mismatch");
    }
    require_in_space(basis[j], "tl_combo");
    preimages.col(static_cast<Eigen::Index>(j)) = softplus_inv(basis[j]);
  }
  // Matches tl_matmul(Y, t(coeffs)) with Y the preimage columns.
  Eigen::VectorXd out(p);
  Eigen::MatrixXd coeff_row = coeffs.transpose();
  for (Eigen::Index i = 0; i < p; ++i) {
    out[i] = softplus(ext_dot(coeff_row, 0, preimages.row(i).transpose()));
  }
  return out;
}

double inner_product(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2) {
  if (x1.size() != x2.size()) {
    throw std::invalid_argument("inner_product: length mismatch");
  }
  require_in_space(x1, "inner_product");
  require_in_space(x2, "inner_product");
  if (!all_finite_preimage(x1) || !all_finite_preimage(x2)) {
    throw std::domain_error(
        "inner_product: components must be in (0, inf); boundary values have "
        "infinite preimages");
  }
  return softplus_inv(x1).dot(softplus_inv(x2));
}

double tl_norm(const Eigen::VectorXd& x) {
  return std::sqrt(inner_product(x, x));
}

double quadratic_form(const Eigen::MatrixXd& s, const Eigen::VectorXd& x) {
  if (s.rows() != s.cols() || s.rows() != x.size()) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("quadratic_form: matrix is not symmetric");
  }
  if (!all_finite_preimage(x)) {
    throw std::domain_error("quadratic_form: components must be in (0, inf)");
  }
  const Eigen::VectorXd y = softplus_inv(x);
  return y.dot(s * y);
}

}  // namespace tailx
