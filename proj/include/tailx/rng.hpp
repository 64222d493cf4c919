#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace tailx {

/// Deterministic random source. All randomness in the library flows from a
/// single 64-bit root seed through named substreams, so results are
/// reproducible bit-for-bit regardless of threading or call order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Seed for the substream identified by (name, index) under a root seed.
  static std::uint64_t substream(std::uint64_t root, std::string_view name,
                                 std::uint64_t index = 0);

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();

  /// Unit Frechet with tail index 2: z = (-log U)^{-1/2}.
  double frechet2();

  /// Standard normal via Box-Muller.
  double normal();

  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

  /// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the
  /// sign of diag(R) fixed.
  Eigen::MatrixXd random_orthogonal(Eigen::Index n);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tailx
