#pragma once

#include <Eigen/Dense>

namespace tailx {

/// The softplus transform t(y) = log(1 + exp(y)), extended so that
/// t(-inf) = 0 and t(inf) = inf. Strictly increasing, and neutral in the
/// upper tail: t(y) - y < 1e-12 for y >= 30. Evaluated branch-wise to stay
/// stable for |y| up to 1e8 and beyond.
double softplus(double y);

/// Inverse transform t^{-1}(x) = log(exp(x) - 1) on [0, inf], with
/// t^{-1}(0) = -inf and t^{-1}(inf) = inf. Throws std::domain_error for
/// x < 0. Uses expm1 below x = 30 and the identity above (the correction
/// there is below 1e-13).
double softplus_inv(double x);

/// Elementwise application to any Eigen vector or matrix expression.
template <typename Derived>
typename Derived::PlainObject softplus(const Eigen::MatrixBase<Derived>& y) {
  return y.derived().unaryExpr([](double v) { return softplus(v); });
}

template <typename Derived>
typename Derived::PlainObject softplus_inv(
    const Eigen::MatrixBase<Derived>& x) {
  return x.derived().unaryExpr([](double v) { return softplus_inv(v); });
}

/// The additive-zero vector: every component equals t(0) = log 2.
Eigen::VectorXd additive_zero(Eigen::Index p);

/// Vector addition in the transformed space: t(t^{-1}(x1) + t^{-1}(x2)).
/// Components with infinite preimages combine by extended arithmetic;
/// inf - inf raises std::domain_error.
Eigen::VectorXd tl_add(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2);

/// Scalar multiplication: t(a * t^{-1}(x)). 0 * (+-inf) raises
/// std::domain_error.
Eigen::VectorXd tl_scale(double a, const Eigen::VectorXd& x);

/// Matrix multiplication: t(A t^{-1}(x)) for a real p x q matrix A and a
/// length-q transformed vector x. Satisfies the composition law
/// tl_matmul(B, tl_matmul(A, x)) = tl_matmul(B*A, x).
Eigen::VectorXd tl_matmul(const Eigen::MatrixXd& a, const Eigen::VectorXd& x);

/// Linear combination a_1 o x_1 (+) ... (+) a_q o x_q
/// = t(sum_j a_j t^{-1}(x_j)).
Eigen::VectorXd tl_combo(const Eigen::VectorXd& coeffs,
                         const std::vector<Eigen::VectorXd>& basis);

/// Inner product of transformed vectors: the Euclidean inner product of
/// their preimages. Requires every component in (0, inf); boundary values
/// have infinite preimages and raise std::domain_error.
double inner_product(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2);

/// Norm induced by the inner product (equals the L2 norm of the preimage).
double tl_norm(const Eigen::VectorXd& x);

/// Quadratic form Q(S, x) = <x, S o x> = y^T S y with y = t^{-1}(x).
/// S must be symmetric within 1e-10.
double quadratic_form(const Eigen::MatrixXd& s, const Eigen::VectorXd& x);

}  // namespace tailx
