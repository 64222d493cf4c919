#include "tailx/construct.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tailx/rng.hpp"
#include "tailx/transform.hpp"

namespace tailx {

namespace {

constexpr Eigen::Index kSimBlock = 8192;

void require_thresholds(const Eigen::VectorXd& u, Eigen::Index p) {
  if (u.size() != p) {
    throw std::invalid_argument("exceedance measure: threshold length mismatch");
  }
  if (!(u.array() > 0.0).all()) {
    throw std::invalid_argument("exceedance measure: thresholds must be > 0");
  }
}

// Spherical triangle solid angle (van Oosterom & Strackee).
double solid_angle(const Eigen::Vector3d& v1, const Eigen::Vector3d& v2,
                   const Eigen::Vector3d& v3) {
  const double triple = v1.dot(v2.cross(v3));
  const double denom = 1.0 + v1.dot(v2) + v2.dot(v3) + v3.dot(v1);
  return std::abs(2.0 * std::atan2(std::abs(triple), denom));
}

struct Tri {
  Eigen::Vector3d a, b, c;
};

}  // namespace

CoefMatrix::CoefMatrix(Eigen::MatrixXd a, double tail_index)
    : entries(std::move(a)), alpha(tail_index) {
  if (entries.rows() < 1 || entries.cols() < 1) {
    throw std::invalid_argument("coef matrix: needs at least one row/column");
  }
  if (entries.hasNaN()) {
    throw std::invalid_argument("coef matrix: NaN entry");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("coef matrix: tail index must be > 0");
  }
  for (Eigen::Index j = 0; j < entries.cols(); ++j) {
    if (entries.col(j).maxCoeff() <= 0.0) {
      throw std::invalid_argument("coef matrix: column " + std::to_string(j) +
                                  " has no positive entry");
    }
  }
}

AngularMeasure::AngularMeasure(Eigen::MatrixXd pts, Eigen::VectorXd m)
    : points(std::move(pts)), masses(std::move(m)) {
  if (points.rows() != masses.size() || points.rows() < 1) {
    throw std::invalid_argument("angular measure: point/mass count mismatch");
  }
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if ((points.row(i).array() < 0.0).any()) {
      throw std::invalid_argument("angular measure: point off the nonnegative sphere");
    }
    if (std::abs(points.row(i).norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("angular measure: point not unit norm");
    }
    if (!(masses[i] > 0.0)) {
      throw std::invalid_argument("angular measure: masses must be positive");
    }
  }
}

AngularMeasure angular_of_construction(const CoefMatrix& a) {
  const Eigen::MatrixXd a0 = a.nonneg();
  Eigen::MatrixXd points(a.n_terms(), a.dim());
  Eigen::VectorXd masses(a.n_terms());
  for (Eigen::Index j = 0; j < a.n_terms(); ++j) {
    const double norm = a0.col(j).norm();
    points.row(j) = a0.col(j).transpose() / norm;
    masses[j] = std::pow(norm, a.alpha);
  }
  return AngularMeasure(std::move(points), std::move(masses));
}

CoefMatrix coef_of_angular(const AngularMeasure& h, double alpha) {
  Eigen::MatrixXd a(h.dim(), h.size());
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    a.col(j) = std::pow(h.masses[j], 1.0 / alpha) * h.points.row(j).transpose();
  }
  return CoefMatrix(std::move(a), alpha);
}

AngularMeasure merge_points(const AngularMeasure& h, double tol) {
  std::vector<Eigen::Index> rep;
  std::vector<double> mass;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    bool merged = false;
    for (std::size_t c = 0; c < rep.size(); ++c) {
      if ((h.points.row(i) - h.points.row(rep[c])).norm() < tol) {
        mass[c] += h.masses[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      rep.push_back(i);
      mass.push_back(h.masses[i]);
    }
  }
  Eigen::MatrixXd points(static_cast<Eigen::Index>(rep.size()), h.dim());
  Eigen::VectorXd masses(static_cast<Eigen::Index>(rep.size()));
  for (std::size_t c = 0; c < rep.size(); ++c) {
    points.row(static_cast<Eigen::Index>(c)) = h.points.row(rep[c]);
    masses[static_cast<Eigen::Index>(c)] = mass[c];
  }
  return AngularMeasure(std::move(points), std::move(masses));
}

Tpdm tpdm_of_construction(const CoefMatrix& a, std::vector<std::string> names) {
  if (a.alpha != 2.0) {
    throw std::invalid_argument(
        "tpdm_of_construction: requires tail index alpha = 2");
  }
  const Eigen::MatrixXd a0 = a.nonneg();
  Eigen::MatrixXd sigma = a0 * a0.transpose();
  sigma = ((sigma + sigma.transpose()) / 2.0).eval();
  return Tpdm::from_matrix(std::move(sigma), std::move(names));
}

TailSample simulate_construction(const CoefMatrix& a, std::size_t n,
                                 std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  const Eigen::Index q = a.n_terms();
  const double inv_alpha = 1.0 / a.alpha;
  TailSample out;
  out.seed = seed;
  out.alpha = a.alpha;
  out.values.resize(static_cast<Eigen::Index>(n), a.dim());
  Eigen::MatrixXd y(kSimBlock, q);
  for (Eigen::Index start = 0; start < out.values.rows(); start += kSimBlock) {
    const Eigen::Index len =
        std::min<Eigen::Index>(kSimBlock, out.values.rows() - start);
    Rng rng(Rng::substream(seed, "simulate",
                           static_cast<std::uint64_t>(start / kSimBlock)));
    for (Eigen::Index t = 0; t < len; ++t) {
      for (Eigen::Index j = 0; j < q; ++j) {
        const double z = std::pow(-std::log(rng.uniform()), -inv_alpha);
        y(t, j) = softplus_inv(z);
      }
    }
    out.values.middleRows(start, len) =
        softplus((y.topRows(len) * a.entries.transpose()).eval());
  }
  return out;
}

TailSample simulate_max_linear(const CoefMatrix& a, std::size_t n,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  if (a.entries.minCoeff() < 0.0) {
    throw std::invalid_argument(
        "simulate_max_linear: matrix must be entrywise nonnegative");
  }
  const Eigen::Index q = a.n_terms();
  const double inv_alpha = 1.0 / a.alpha;
  TailSample out;
  out.seed = seed;
  out.alpha = a.alpha;
  out.values.resize(static_cast<Eigen::Index>(n), a.dim());
  Eigen::VectorXd z(q);
  for (Eigen::Index start = 0; start < out.values.rows(); start += kSimBlock) {
    const Eigen::Index len =
        std::min<Eigen::Index>(kSimBlock, out.values.rows() - start);
    Rng rng(Rng::substream(seed, "simulate",
                           static_cast<std::uint64_t>(start / kSimBlock)));
    for (Eigen::Index t = 0; t < len; ++t) {
      for (Eigen::Index j = 0; j < q; ++j) {
        z[j] = std::pow(-std::log(rng.uniform()), -inv_alpha);
      }
      out.values.row(start + t) =
          (a.entries.array().rowwise() * z.transpose().array())
              .rowwise()
              .maxCoeff()
              .transpose();
    }
  }
  return out;
}

double joint_exceedance(const AngularMeasure& h, const Eigen::VectorXd& u,
                        double alpha) {
  require_thresholds(u, h.dim());
  double total = 0.0;
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    const double ratio = (h.points.row(j).transpose().array() / u.array()).minCoeff();
    total += h.masses[j] * std::pow(ratio, alpha);
  }
  return total;
}

double union_exceedance(const AngularMeasure& h, const Eigen::VectorXd& u,
                        double alpha) {
  require_thresholds(u, h.dim());
  double total = 0.0;
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    const double ratio = (h.points.row(j).transpose().array() / u.array()).maxCoeff();
    total += h.masses[j] * std::pow(ratio, alpha);
  }
  return total;
}

double joint_exceedance(const CoefMatrix& a, const Eigen::VectorXd& u) {
  return joint_exceedance(angular_of_construction(a), u, a.alpha);
}

double union_exceedance(const CoefMatrix& a, const Eigen::VectorXd& u) {
  return union_exceedance(angular_of_construction(a), u, a.alpha);
}

CoefMatrix discretize_angular(
    const std::function<double(const Eigen::VectorXd&)>& density,
    Eigen::Index p, Eigen::Index q, double alpha) {
  if (q < 1) throw std::invalid_argument("discretize_angular: q must be >= 1");
  std::vector<Eigen::VectorXd> centers;
  std::vector<double> masses;

  if (p == 2) {
    // Equal-angle arcs on the quarter circle; composite Simpson per cell.
    const double half_pi = std::acos(0.0);
    const double width = half_pi / static_cast<double>(q);
    constexpr int kPanels = 32;
    for (Eigen::Index j = 0; j < q; ++j) {
      const double a0 = width * static_cast<double>(j);
      const double hstep = width / kPanels;
      double mass = 0.0;
      for (int s = 0; s < kPanels; ++s) {
        const double t0 = a0 + hstep * s;
        auto f = [&](double theta) {
          Eigen::VectorXd w(2);
          w << std::cos(theta), std::sin(theta);
          return density(w);
        };
        mass += hstep / 6.0 *
                (f(t0) + 4.0 * f(t0 + hstep / 2.0) + f(t0 + hstep));
      }
      const double mid = a0 + width / 2.0;
      Eigen::VectorXd w(2);
      w << std::cos(mid), std::sin(mid);
      centers.push_back(w);
      masses.push_back(mass);
    }
  } else if (p == 3) {
    // Recursive subdivision of the octant triangle; centroid rule per cell.
    int levels = 0;
    while ((Eigen::Index{1} << (2 * levels)) < q) ++levels;
    std::vector<Tri> tris{{Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
                           Eigen::Vector3d::UnitZ()}};
    for (int l = 0; l < levels; ++l) {
      std::vector<Tri> next;
      next.reserve(tris.size() * 4);
      for (const Tri& t : tris) {
        const Eigen::Vector3d ab = (t.a + t.b).normalized();
        const Eigen::Vector3d bc = (t.b + t.c).normalized();
        const Eigen::Vector3d ca = (t.c + t.a).normalized();
        next.push_back({t.a, ab, ca});
        next.push_back({ab, t.b, bc});
        next.push_back({ca, bc, t.c});
        next.push_back({ab, bc, ca});
      }
      tris = std::move(next);
    }
    for (const Tri& t : tris) {
      const Eigen::Vector3d c = (t.a + t.b + t.c).normalized();
      const double area = solid_angle(t.a, t.b, t.c);
      centers.emplace_back(c);
      masses.push_back(density(c) * area);
    }
  } else {
    throw std::invalid_argument(
        "discretize_angular: only p = 2 and p = 3 are supported");
  }

  Eigen::Index kept = 0;
  for (double m : masses) {
    if (m < 0.0) {
      throw std::domain_error("discretize_angular: density must be nonnegative");
    }
    if (m > 0.0) ++kept;
  }
  if (kept == 0) {
    throw std::domain_error("discretize_angular: density integrates to zero");
  }
  Eigen::MatrixXd a(p, kept);
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    if (masses[j] > 0.0) {
      a.col(col++) = std::pow(masses[j], 1.0 / alpha) * centers[j];
    }
  }
  return CoefMatrix(std::move(a), alpha);
}

}  // namespace tailx
