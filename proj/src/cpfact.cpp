#include "tailx/cpfact.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailx/rng.hpp"

namespace tailx {

namespace {

struct RestartResult {
  Eigen::MatrixXd a;
  double residual = 0.0;
  std::size_t iterations = 0;
};

RestartResult run_restart(const Eigen::MatrixXd& b, const Eigen::MatrixXd& sigma,
                          double inner_tol, std::size_t max_iter,
                          std::uint64_t seed) {
  const Eigen::Index q = b.cols();
  Rng rng(seed);
  Eigen::MatrixXd rot = rng.random_orthogonal(q);
  Eigen::MatrixXd c;
  std::size_t iters = 0;
  double prev_window = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iter; ++it) {
    iters = it + 1;
    c = b * rot;
    const double neg = c.cwiseMin(0.0).norm();
    if (neg < inner_tol) break;
    // Bail out of a stalled restart: no meaningful progress in 200 rounds.
    if (it % 200 == 0) {
      if (neg > 0.999 * prev_window) break;
      prev_window = neg;
    }
    const Eigen::MatrixXd target = b.transpose() * c.cwiseMax(0.0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        target, Eigen::ComputeThinU | Eigen::ComputeThinV);
    rot = svd.matrixU() * svd.matrixV().transpose();
  }
  RestartResult out;
  out.a = (b * rot).cwiseMax(0.0);
  out.residual = (out.a * out.a.transpose() - sigma).norm();
  out.iterations = iters;
  return out;
}

}  // namespace

Eigen::Index cp_rank_bound(Eigen::Index p) {
  const Eigen::Index full = p * (p + 1) / 2;
  return p >= 5 ? full - 4 : full;
}

CpFactorization cp_factorize(const Tpdm& t, const CpOptions& opts) {
  const Eigen::Index p = t.dim();
  const Eigen::MatrixXd& sigma = t.sigma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("cp_factorize: eigendecomposition failed");
  }
  const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    if (es.eigenvalues()[i] > lmax * 1e-12) ++rank;
  }
  const Eigen::Index bound = cp_rank_bound(p);
  const Eigen::Index q =
      opts.q > 0 ? opts.q : std::min<Eigen::Index>(2 * p, bound);
  if (q > bound) {
    throw std::invalid_argument("cp_factorize: q exceeds the cp-rank bound");
  }
  if (q < rank) {
    throw std::invalid_argument(
        "cp_factorize: q is below the rank of the matrix");
  }
  if (opts.restarts < 1 || opts.max_iter < 1) {
    throw std::invalid_argument("cp_factorize: needs restarts and iterations");
  }

  CpFactorization out;
  if (lmax == 0.0) {  // the zero matrix factors trivially
    out.a = Eigen::MatrixXd::Zero(p, q);
    out.residual = 0.0;
    out.iterations = 0;
    out.converged = true;
    out.restarts_used = 0;
    return out;
  }

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, q);
  {
    Eigen::Index col = 0;
    for (Eigen::Index i = p - 1; i >= 0; --i) {  // descending eigenvalues
      const double lam = es.eigenvalues()[i];
      if (lam > lmax * 1e-12) {
        b.col(col++) = std::sqrt(lam) * es.eigenvectors().col(i);
      }
    }
  }
  // Inner stop scaled so the final residual lands near tol/2:
  // |A A^T - Sigma|_F <= 2 |B| * negpart(B Q).
  const double inner_tol = opts.tol / (1.0 + 4.0 * b.norm());

  std::vector<RestartResult> results(opts.restarts);
  constexpr std::size_t kWave = 4;
  for (std::size_t start = 0; start < opts.restarts; start += kWave) {
    const std::size_t end = std::min(start + kWave, opts.restarts);
    std::vector<std::future<RestartResult>> wave;
    for (std::size_t i = start; i < end; ++i) {
      const std::uint64_t seed = Rng::substream(opts.seed, "cpfact/restart", i);
      wave.push_back(std::async(std::launch::async, run_restart, std::cref(b),
                                std::cref(sigma), inner_tol, opts.max_iter,
                                seed));
    }
    for (std::size_t i = start; i < end; ++i) {
      results[i] = wave[i - start].get();
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].residual < results[best].residual) best = i;
  }
  out.a = std::move(results[best].a);
  out.residual = results[best].residual;
  out.iterations = results[best].iterations;
  out.converged = out.residual <= opts.tol * (1.0 + sigma.norm());
  out.restarts_used = opts.restarts;
  return out;
}

CpFactorization cp_rank_search(const Tpdm& t, Eigen::Index q_min,
                               Eigen::Index q_max, const CpOptions& per_q) {
  if (q_min < 1 || q_min > q_max) {
    throw std::invalid_argument("cp_rank_search: empty q range");
  }
  if (q_max > cp_rank_bound(t.dim())) {
    throw std::invalid_argument("cp_rank_search: q_max exceeds cp-rank bound");
  }
  CpFactorization best;
  bool have_best = false;
  for (Eigen::Index q = q_min; q <= q_max; ++q) {
    CpOptions opts = per_q;
    opts.q = q;
    opts.seed = Rng::substream(per_q.seed, "cpfact/ranksearch",
                               static_cast<std::uint64_t>(q));
    CpFactorization f;
    try {
      f = cp_factorize(t, opts);
    } catch (const std::invalid_argument&) {
      continue;  // q below rank: no exact factorization of this width exists
    }
    if (f.converged) return f;
    if (!have_best || f.residual < best.residual) {
      best = std::move(f);
      have_best = true;
    }
  }
  if (!have_best) {
    throw std::invalid_argument(
        "cp_rank_search: no q in range reaches the matrix rank");
  }
  return best;
}

CoefMatrix construct_from_tpdm(const Tpdm& t, const CpOptions& opts) {
  const CpFactorization f = cp_factorize(t, opts);
  if (!f.converged) {
    throw std::runtime_error(
        "construct_from_tpdm: factorization did not converge (residual " +
        std::to_string(f.residual) + ")");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < f.a.cols(); ++j) {
    if (f.a.col(j).maxCoeff() > 0.0) keep.push_back(j);
  }
  if (keep.empty()) {
    throw std::domain_error("construct_from_tpdm: factor has no mass");
  }
  Eigen::MatrixXd a(f.a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = f.a.col(keep[j]);
  }
  return CoefMatrix(std::move(a), 2.0);
}

}  // namespace tailx
