#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "tailx/construct.hpp"
#include "tailx/tpdm.hpp"

namespace tailx {

struct CpOptions {
  Eigen::Index q = 0;         // 0 -> min(2p, cp_rank_bound(p))
  double tol = 1e-8;          // relative residual target
  std::size_t max_iter = 5000;
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
};

/// Result of the completely positive factorization Sigma ~= A A^T, A >= 0.
struct CpFactorization {
  Eigen::MatrixXd a;           // p x q, entrywise >= 0
  double residual = 0.0;       // Frobenius norm of A A^T - Sigma
  std::size_t iterations = 0;  // iterations of the reported restart
  bool converged = false;      // residual <= tol * (1 + |Sigma|_F)
  std::size_t restarts_used = 0;
};

/// Upper bound on the cp-rank of a p x p completely positive matrix:
/// p(p+1)/2 - 4 for p >= 5, p(p+1)/2 otherwise.
Eigen::Index cp_rank_bound(Eigen::Index p);

/// Alternating-projection factorization: starting from B with B B^T =
/// Sigma (eigenvector scaling, zero-padded to width q), rotate by an
/// orthogonal Q and alternate between the nonnegative cone and the
/// orthogonal Procrustes polar factor until B Q is nonnegative. Restarts
/// draw independent random rotations; the best restart by residual wins
/// (ties to the lowest index). Deterministic for fixed inputs.
CpFactorization cp_factorize(const Tpdm& t, const CpOptions& opts = {});

/// Smallest q in [q_min, q_max] whose factorization converges, with its
/// factorization; if none converges the best attempt is returned with
/// converged = false (which proves nothing about non-existence).
CpFactorization cp_rank_search(const Tpdm& t, Eigen::Index q_min,
                               Eigen::Index q_max, const CpOptions& per_q = {});

/// Converged nonnegative factor as a coefficient matrix (alpha = 2) for
/// constructing vectors that share the dependence matrix. All-zero columns
/// are dropped; throws if the factorization did not converge.
CoefMatrix construct_from_tpdm(const Tpdm& t, const CpOptions& opts = {});

}  // namespace tailx
