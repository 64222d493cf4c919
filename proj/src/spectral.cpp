#include "tailx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tailx/transform.hpp"

namespace tailx {

namespace {

// Flip so the largest-magnitude entry is positive (first index decides on
// ties); rules out entrywise-nonpositive columns.
void fix_sign(Eigen::Ref<Eigen::VectorXd> col) {
  Eigen::Index arg = 0;
  col.cwiseAbs().maxCoeff(&arg);
  if (col[arg] < 0.0) col = -col;
}

bool lex_greater(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Eigen::VectorXd row_radii(const Eigen::MatrixXd& rows) {
  return rows.rowwise().norm();
}

double quantile(Eigen::VectorXd v, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("quantile level must be in (0, 1)");
  }
  std::sort(v.data(), v.data() + v.size());
  const double h = static_cast<double>(v.size() - 1) * level;
  const auto lo = static_cast<Eigen::Index>(h);
  if (lo + 1 >= v.size()) return v[v.size() - 1];
  return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

}  // namespace

EigenBasis eigen_decompose(const Tpdm& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.sigma);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigen_decompose: solver failed");
  }
  const Eigen::Index p = t.dim();
  EigenBasis out;
  out.names = t.names;
  out.lambdas.resize(p);
  out.u.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    // Ascending from Eigen; reverse, and clamp the tiny negatives a PSD
    // matrix can produce in floating point.
    out.lambdas[i] = std::max(0.0, es.eigenvalues()[p - 1 - i]);
    out.u.col(i) = es.eigenvectors().col(p - 1 - i);
    fix_sign(out.u.col(i));
  }
  // Ties (within 1e-10) are ordered lexicographically by eigenvector.
  Eigen::Index start = 0;
  while (start < p) {
    Eigen::Index end = start + 1;
    while (end < p && out.lambdas[start] - out.lambdas[end] <= 1e-10) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(end - start));
      std::iota(idx.begin(), idx.end(), start);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return lex_greater(out.u.col(a), out.u.col(b));
                       });
      Eigen::MatrixXd cols(p, end - start);
      Eigen::VectorXd lams(end - start);
      for (Eigen::Index j = 0; j < end - start; ++j) {
        cols.col(j) = out.u.col(idx[static_cast<std::size_t>(j)]);
        lams[j] = out.lambdas[idx[static_cast<std::size_t>(j)]];
      }
      out.u.middleCols(start, end - start) = cols;
      out.lambdas.segment(start, end - start) = lams;
    }
    start = end;
  }
  const double scale = std::max(1e-300, t.sigma.norm());
  const Eigen::MatrixXd recon =
      out.u * out.lambdas.asDiagonal() * out.u.transpose();
  if ((recon - t.sigma).norm() > 1e-8 * scale) {
    throw std::runtime_error("eigen_decompose: reconstruction check failed");
  }
  out.basis = softplus(out.u);
  return out;
}

Eigen::MatrixXd project(const Eigen::MatrixXd& rows, const EigenBasis& basis) {
  if (rows.cols() != basis.dim()) {
    throw std::invalid_argument("project: dimension mismatch");
  }
  if (!(rows.array() > 0.0).all() || !rows.allFinite()) {
    throw std::domain_error(
        "project: rows must be strictly positive and finite");
  }
  return softplus_inv(rows) * basis.u;
}

Eigen::VectorXd reconstruct(const Eigen::VectorXd& scores,
                            const EigenBasis& basis, Eigen::Index k) {
  if (scores.size() != basis.dim()) {
    throw std::invalid_argument("reconstruct: score length mismatch");
  }
  if (k < 1 || k > basis.dim()) {
    throw std::out_of_range("reconstruct: k out of range");
  }
  return softplus((basis.u.leftCols(k) * scores.head(k)).eval());
}

Eigen::MatrixXd reconstruct_rows(const Eigen::MatrixXd& scores,
                                 const EigenBasis& basis, Eigen::Index k) {
  if (scores.cols() != basis.dim()) {
    throw std::invalid_argument("reconstruct: score width mismatch");
  }
  if (k < 1 || k > basis.dim()) {
    throw std::out_of_range("reconstruct: k out of range");
  }
  return softplus(
      (scores.leftCols(k) * basis.u.leftCols(k).transpose()).eval());
}

Eigen::MatrixXd pc_dependence(const Tpdm& t, const EigenBasis& basis) {
  if (t.dim() != basis.dim()) {
    throw std::invalid_argument("pc_dependence: dimension mismatch");
  }
  return basis.u.transpose() * t.sigma * basis.u;
}

std::pair<double, double> balance_diagnostic(const Eigen::MatrixXd& scores,
                                             Eigen::Index i, Eigen::Index k,
                                             double r0_quantile) {
  if (i == k) {
    throw std::invalid_argument("balance_diagnostic: indices must differ");
  }
  if (i < 0 || k < 0 || i >= scores.cols() || k >= scores.cols()) {
    throw std::out_of_range("balance_diagnostic: index out of range");
  }
  const Eigen::VectorXd radii = row_radii(scores);
  const double r0 = quantile(radii, r0_quantile);
  double pos = 0.0, neg = 0.0;
  std::size_t n_exc = 0;
  for (Eigen::Index t = 0; t < scores.rows(); ++t) {
    if (radii[t] > r0) {
      ++n_exc;
      const double prod = scores(t, i) * scores(t, k) / (radii[t] * radii[t]);
      (prod > 0.0 ? pos : neg) += prod;
    }
  }
  if (n_exc == 0) {
    throw std::domain_error("balance_diagnostic: no radial exceedances");
  }
  const double mass = r0 * r0 * static_cast<double>(n_exc) /
                      static_cast<double>(scores.rows());
  const double scale = mass / static_cast<double>(n_exc);
  return {scale * pos, -scale * neg};
}

Eigen::MatrixXd score_moments(const Eigen::MatrixXd& scores,
                              double r0_quantile,
                              std::optional<double> known_mass) {
  const Eigen::VectorXd radii = row_radii(scores);
  const double r0 = quantile(radii, r0_quantile);
  const Eigen::Index p = scores.cols();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  std::size_t n_exc = 0;
  for (Eigen::Index t = 0; t < scores.rows(); ++t) {
    if (radii[t] > r0) {
      ++n_exc;
      const Eigen::VectorXd w = scores.row(t).transpose() / radii[t];
      acc += w * w.transpose();
    }
  }
  if (n_exc < 2) {
    throw std::domain_error("score_moments: fewer than 2 radial exceedances");
  }
  const double mass = known_mass ? *known_mass
                                 : r0 * r0 * static_cast<double>(n_exc) /
                                       static_cast<double>(scores.rows());
  return (mass / static_cast<double>(n_exc)) * acc;
}

}  // namespace tailx
