#include "tailx.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "tailx/construct.hpp"
#include "tailx/cpfact.hpp"
#include "tailx/dataset.hpp"
#include "tailx/marginals.hpp"
#include "tailx/serialize.hpp"
#include "tailx/spectral.hpp"
#include "tailx/tpdm.hpp"
#include "tailx/transform.hpp"
#include "tailx/version.hpp"

struct tailx_dataset {
  tailx::Dataset d;
};
struct tailx_coef {
  tailx::CoefMatrix c;
};
struct tailx_angular {
  tailx::AngularMeasure h;
};
struct tailx_tpdm {
  tailx::Tpdm t;
};
struct tailx_eigen {
  tailx::EigenBasis e;
};
struct tailx_cpfact {
  tailx::CpFactorization f;
};
struct tailx_marginals {
  tailx::MarginalSet m;
};

namespace {

thread_local std::string g_last_error;

tailx_status fail(tailx_status code, const char* message) {
  g_last_error = message;
  return code;
}

// Runs the body and maps C++ exceptions onto status codes.
template <typename Fn>
tailx_status guarded(Fn&& fn) {
  try {
    fn();
    return TAILX_OK;
  } catch (const std::domain_error& e) {
    return fail(TAILX_ERR_DOMAIN, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TAILX_ERR_INDEX, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TAILX_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TAILX_ERR_NOMEM, "out of memory");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("did not converge") != std::string::npos) {
      return fail(TAILX_ERR_NOCONV, e.what());
    }
    return fail(TAILX_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(TAILX_ERR_INTERNAL, e.what());
  }
}

tailx_status require(bool ok, const char* message) {
  return ok ? TAILX_OK : fail(TAILX_ERR_INVALID, message);
}

Eigen::VectorXd to_vector(const double* x, size_t n) {
  return Eigen::Map<const Eigen::VectorXd>(x, static_cast<Eigen::Index>(n));
}

Eigen::MatrixXd to_matrix(const double* x, size_t rows, size_t cols) {
  return Eigen::Map<
      const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::RowMajor>>(x, static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
}

tailx_dataset* wrap(tailx::Dataset d) {
  if (d.names.empty()) d.names = tailx::default_names(d.values.cols());
  return new tailx_dataset{std::move(d)};
}

}  // namespace

extern "C" {

const char* tailx_version(void) { return tailx::kVersion; }

const char* tailx_last_error(void) { return g_last_error.c_str(); }

const char* tailx_status_name(tailx_status status) {
  switch (status) {
    case TAILX_OK: return "ok";
    case TAILX_ERR_INVALID: return "invalid_argument";
    case TAILX_ERR_DOMAIN: return "domain_error";
    case TAILX_ERR_INDEX: return "index_out_of_range";
    case TAILX_ERR_IO: return "io_error";
    case TAILX_ERR_NOCONV: return "no_convergence";
    case TAILX_ERR_NOMEM: return "out_of_memory";
    case TAILX_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

tailx_status tailx_softplus(double y, double* x) {
  if (auto s = require(x != nullptr, "null output")) return s;
  return guarded([&] { *x = tailx::softplus(y); });
}

tailx_status tailx_softplus_inv(double x, double* y) {
  if (auto s = require(y != nullptr, "null output")) return s;
  return guarded([&] { *y = tailx::softplus_inv(x); });
}

tailx_status tailx_vec_softplus(const double* y, size_t n, double* x) {
  if (auto s = require(y && x && n > 0, "null or empty input")) return s;
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(x, static_cast<Eigen::Index>(n)) =
        tailx::softplus(to_vector(y, n));
  });
}

tailx_status tailx_vec_softplus_inv(const double* x, size_t n, double* y) {
  if (auto s = require(x && y && n > 0, "null or empty input")) return s;
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(y, static_cast<Eigen::Index>(n)) =
        tailx::softplus_inv(to_vector(x, n));
  });
}

tailx_status tailx_vec_add(const double* x1, const double* x2, size_t n,
                           double* out) {
  if (auto s = require(x1 && x2 && out && n > 0, "null or empty input")) {
    return s;
  }
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(out, static_cast<Eigen::Index>(n)) =
        tailx::tl_add(to_vector(x1, n), to_vector(x2, n));
  });
}

tailx_status tailx_vec_scale(double a, const double* x, size_t n, double* out) {
  if (auto s = require(x && out && n > 0, "null or empty input")) return s;
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(out, static_cast<Eigen::Index>(n)) =
        tailx::tl_scale(a, to_vector(x, n));
  });
}

tailx_status tailx_mat_apply(const double* a, size_t p, size_t q,
                             const double* x, double* out) {
  if (auto s = require(a && x && out && p > 0 && q > 0, "null or empty input")) {
    return s;
  }
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(out, static_cast<Eigen::Index>(p)) =
        tailx::tl_matmul(to_matrix(a, p, q), to_vector(x, q));
  });
}

tailx_status tailx_inner_product(const double* x1, const double* x2, size_t n,
                                 double* out) {
  if (auto s = require(x1 && x2 && out && n > 0, "null or empty input")) {
    return s;
  }
  return guarded(
      [&] { *out = tailx::inner_product(to_vector(x1, n), to_vector(x2, n)); });
}

tailx_status tailx_quadratic_form(const double* s, size_t p, const double* x,
                                  double* out) {
  if (auto st = require(s && x && out && p > 0, "null or empty input")) {
    return st;
  }
  return guarded([&] {
    *out = tailx::quadratic_form(to_matrix(s, p, p), to_vector(x, p));
  });
}

tailx_status tailx_dataset_create(const char* const* names,
                                  const double* values_rowmajor, size_t rows,
                                  size_t cols, tailx_dataset** out) {
  if (auto s = require(values_rowmajor && out && rows > 0 && cols > 0,
                       "null or empty input")) {
    return s;
  }
  return guarded([&] {
    tailx::Dataset d;
    d.values = to_matrix(values_rowmajor, rows, cols);
    if (names) {
      for (size_t j = 0; j < cols; ++j) d.names.emplace_back(names[j]);
    }
    *out = wrap(std::move(d));
  });
}

tailx_status tailx_dataset_read_csv(const char* path, int drop_rows,
                                    tailx_dataset** out,
                                    size_t* rows_dropped) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    auto res = tailx::read_csv(path, drop_rows ? tailx::MissingPolicy::kDropRow
                                               : tailx::MissingPolicy::kError);
    if (rows_dropped) *rows_dropped = res.rows_dropped;
    *out = wrap(std::move(res.data));
  });
}

tailx_status tailx_dataset_write_csv(const tailx_dataset* ds,
                                     const char* path) {
  if (auto s = require(ds && path, "null input")) return s;
  return guarded([&] { tailx::write_csv(ds->d, path); });
}

size_t tailx_dataset_rows(const tailx_dataset* ds) {
  return ds ? static_cast<size_t>(ds->d.rows()) : 0;
}

size_t tailx_dataset_cols(const tailx_dataset* ds) {
  return ds ? static_cast<size_t>(ds->d.cols()) : 0;
}

tailx_status tailx_dataset_value(const tailx_dataset* ds, size_t row,
                                 size_t col, double* out) {
  if (auto s = require(ds && out, "null input")) return s;
  if (row >= static_cast<size_t>(ds->d.rows()) ||
      col >= static_cast<size_t>(ds->d.cols())) {
    return fail(TAILX_ERR_INDEX, "dataset index out of range");
  }
  *out = ds->d.values(static_cast<Eigen::Index>(row),
                      static_cast<Eigen::Index>(col));
  return TAILX_OK;
}

const char* tailx_dataset_name(const tailx_dataset* ds, size_t col) {
  if (!ds || col >= ds->d.names.size()) return nullptr;
  return ds->d.names[col].c_str();
}

void tailx_dataset_free(tailx_dataset* ds) { delete ds; }

tailx_status tailx_coef_create(const double* values_rowmajor, size_t p,
                               size_t q, double alpha, tailx_coef** out) {
  if (auto s = require(values_rowmajor && out && p > 0 && q > 0,
                       "null or empty input")) {
    return s;
  }
  return guarded([&] {
    *out = new tailx_coef{tailx::CoefMatrix(to_matrix(values_rowmajor, p, q),
                                            alpha)};
  });
}

tailx_status tailx_coef_read_csv(const char* path, double alpha,
                                 tailx_coef** out) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    *out = new tailx_coef{
        tailx::CoefMatrix(tailx::read_matrix_csv(path), alpha)};
  });
}

size_t tailx_coef_rows(const tailx_coef* a) {
  return a ? static_cast<size_t>(a->c.dim()) : 0;
}

size_t tailx_coef_cols(const tailx_coef* a) {
  return a ? static_cast<size_t>(a->c.n_terms()) : 0;
}

double tailx_coef_alpha(const tailx_coef* a) { return a ? a->c.alpha : 0.0; }

tailx_status tailx_coef_value(const tailx_coef* a, size_t i, size_t j,
                              double* out) {
  if (auto s = require(a && out, "null input")) return s;
  if (i >= static_cast<size_t>(a->c.dim()) ||
      j >= static_cast<size_t>(a->c.n_terms())) {
    return fail(TAILX_ERR_INDEX, "coef index out of range");
  }
  *out = a->c.entries(static_cast<Eigen::Index>(i),
                      static_cast<Eigen::Index>(j));
  return TAILX_OK;
}

void tailx_coef_free(tailx_coef* a) { delete a; }

tailx_status tailx_coef_angular(const tailx_coef* a, tailx_angular** out) {
  if (auto s = require(a && out, "null input")) return s;
  return guarded(
      [&] { *out = new tailx_angular{tailx::angular_of_construction(a->c)}; });
}

tailx_status tailx_angular_merge(const tailx_angular* h, double tol,
                                 tailx_angular** out) {
  if (auto s = require(h && out, "null input")) return s;
  return guarded(
      [&] { *out = new tailx_angular{tailx::merge_points(h->h, tol)}; });
}

size_t tailx_angular_size(const tailx_angular* h) {
  return h ? static_cast<size_t>(h->h.size()) : 0;
}

size_t tailx_angular_dim(const tailx_angular* h) {
  return h ? static_cast<size_t>(h->h.dim()) : 0;
}

tailx_status tailx_angular_mass(const tailx_angular* h, size_t i,
                                double* out) {
  if (auto s = require(h && out, "null input")) return s;
  if (i >= static_cast<size_t>(h->h.size())) {
    return fail(TAILX_ERR_INDEX, "angular index out of range");
  }
  *out = h->h.masses[static_cast<Eigen::Index>(i)];
  return TAILX_OK;
}

tailx_status tailx_angular_point(const tailx_angular* h, size_t i, size_t j,
                                 double* out) {
  if (auto s = require(h && out, "null input")) return s;
  if (i >= static_cast<size_t>(h->h.size()) ||
      j >= static_cast<size_t>(h->h.dim())) {
    return fail(TAILX_ERR_INDEX, "angular index out of range");
  }
  *out = h->h.points(static_cast<Eigen::Index>(i),
                     static_cast<Eigen::Index>(j));
  return TAILX_OK;
}

double tailx_angular_total_mass(const tailx_angular* h) {
  return h ? h->h.total_mass() : 0.0;
}

void tailx_angular_free(tailx_angular* h) { delete h; }

tailx_status tailx_joint_exceedance(const tailx_coef* a, const double* u,
                                    size_t p, double* out) {
  if (auto s = require(a && u && out, "null input")) return s;
  return guarded(
      [&] { *out = tailx::joint_exceedance(a->c, to_vector(u, p)); });
}

tailx_status tailx_union_exceedance(const tailx_coef* a, const double* u,
                                    size_t p, double* out) {
  if (auto s = require(a && u && out, "null input")) return s;
  return guarded(
      [&] { *out = tailx::union_exceedance(a->c, to_vector(u, p)); });
}

tailx_status tailx_simulate(const tailx_coef* a, size_t n, uint64_t seed,
                            tailx_dataset** out) {
  if (auto s = require(a && out, "null input")) return s;
  return guarded([&] {
    tailx::Dataset d;
    d.values = tailx::simulate_construction(a->c, n, seed).values;
    *out = wrap(std::move(d));
  });
}

tailx_status tailx_simulate_max_linear(const tailx_coef* a, size_t n,
                                       uint64_t seed, tailx_dataset** out) {
  if (auto s = require(a && out, "null input")) return s;
  return guarded([&] {
    tailx::Dataset d;
    d.values = tailx::simulate_max_linear(a->c, n, seed).values;
    *out = wrap(std::move(d));
  });
}

tailx_status tailx_tpdm_from_coef(const tailx_coef* a, tailx_tpdm** out) {
  if (auto s = require(a && out, "null input")) return s;
  return guarded(
      [&] { *out = new tailx_tpdm{tailx::tpdm_of_construction(a->c)}; });
}

tailx_status tailx_estimate_tpdm(const tailx_dataset* ds, int r0_is_quantile,
                                 double r0, double mass, tailx_tpdm** out) {
  if (auto s = require(ds && out, "null input")) return s;
  return guarded([&] {
    std::optional<double> known;
    if (mass > 0.0) known = mass;
    tailx::Tpdm t =
        r0_is_quantile
            ? tailx::estimate_tpdm_quantile(ds->d.values, r0, known, ds->d.names)
            : tailx::estimate_tpdm(ds->d.values, r0, known, ds->d.names);
    *out = new tailx_tpdm{std::move(t)};
  });
}

size_t tailx_tpdm_dim(const tailx_tpdm* t) {
  return t ? static_cast<size_t>(t->t.dim()) : 0;
}

tailx_status tailx_tpdm_value(const tailx_tpdm* t, size_t i, size_t k,
                              double* out) {
  if (auto s = require(t && out, "null input")) return s;
  if (i >= static_cast<size_t>(t->t.dim()) ||
      k >= static_cast<size_t>(t->t.dim())) {
    return fail(TAILX_ERR_INDEX, "tpdm index out of range");
  }
  *out = t->t.sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return TAILX_OK;
}

double tailx_tpdm_total_mass(const tailx_tpdm* t) {
  return t ? t->t.total_mass : 0.0;
}

size_t tailx_tpdm_n_exc(const tailx_tpdm* t) { return t ? t->t.n_exc : 0; }

int tailx_tpdm_r0(const tailx_tpdm* t, double* out) {
  if (!t || !t->t.r0) return 0;
  if (out) *out = *t->t.r0;
  return 1;
}

const char* tailx_tpdm_name(const tailx_tpdm* t, size_t i) {
  if (!t || i >= t->t.names.size()) return nullptr;
  return t->t.names[i].c_str();
}

tailx_status tailx_tpdm_save_json(const tailx_tpdm* t, const char* path) {
  if (auto s = require(t && path, "null input")) return s;
  return guarded([&] { tailx::save_text(path, tailx::to_json(t->t)); });
}

tailx_status tailx_tpdm_load_json(const char* path, tailx_tpdm** out) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    *out = new tailx_tpdm{tailx::tpdm_from_json(tailx::load_text(path))};
  });
}

void tailx_tpdm_free(tailx_tpdm* t) { delete t; }

tailx_status tailx_eigen_decompose(const tailx_tpdm* t, tailx_eigen** out) {
  if (auto s = require(t && out, "null input")) return s;
  return guarded([&] { *out = new tailx_eigen{tailx::eigen_decompose(t->t)}; });
}

size_t tailx_eigen_dim(const tailx_eigen* e) {
  return e ? static_cast<size_t>(e->e.dim()) : 0;
}

tailx_status tailx_eigen_lambda(const tailx_eigen* e, size_t i, double* out) {
  if (auto s = require(e && out, "null input")) return s;
  if (i >= static_cast<size_t>(e->e.dim())) {
    return fail(TAILX_ERR_INDEX, "eigen index out of range");
  }
  *out = e->e.lambdas[static_cast<Eigen::Index>(i)];
  return TAILX_OK;
}

tailx_status tailx_eigen_vector(const tailx_eigen* e, size_t i, size_t j,
                                double* out) {
  if (auto s = require(e && out, "null input")) return s;
  if (i >= static_cast<size_t>(e->e.dim()) ||
      j >= static_cast<size_t>(e->e.dim())) {
    return fail(TAILX_ERR_INDEX, "eigen index out of range");
  }
  // (i, j) = component i of eigenvector j.
  *out = e->e.u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return TAILX_OK;
}

const char* tailx_eigen_name(const tailx_eigen* e, size_t i) {
  if (!e || i >= e->e.names.size()) return nullptr;
  return e->e.names[i].c_str();
}

tailx_status tailx_eigen_save_json(const tailx_eigen* e, const char* path) {
  if (auto s = require(e && path, "null input")) return s;
  return guarded([&] { tailx::save_text(path, tailx::to_json(e->e)); });
}

tailx_status tailx_eigen_load_json(const char* path, tailx_eigen** out) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    *out = new tailx_eigen{tailx::eigen_from_json(tailx::load_text(path))};
  });
}

void tailx_eigen_free(tailx_eigen* e) { delete e; }

tailx_status tailx_project(const tailx_dataset* ds, const tailx_eigen* e,
                           tailx_dataset** scores) {
  if (auto s = require(ds && e && scores, "null input")) return s;
  return guarded([&] {
    tailx::Dataset d;
    d.values = tailx::project(ds->d.values, e->e);
    for (Eigen::Index i = 0; i < d.values.cols(); ++i) {
      d.names.push_back("pc" + std::to_string(i + 1));
    }
    *scores = wrap(std::move(d));
  });
}

tailx_status tailx_reconstruct(const tailx_dataset* scores,
                               const tailx_eigen* e, size_t k,
                               tailx_dataset** out) {
  if (auto s = require(scores && e && out, "null input")) return s;
  return guarded([&] {
    tailx::Dataset d;
    d.values = tailx::reconstruct_rows(scores->d.values, e->e,
                                       static_cast<Eigen::Index>(k));
    d.names = e->e.names;
    *out = wrap(std::move(d));
  });
}

tailx_status tailx_balance_diagnostic(const tailx_dataset* scores, size_t i,
                                      size_t k, double r0_quantile,
                                      double* sum_pos, double* sum_neg) {
  if (auto s = require(scores && sum_pos && sum_neg, "null input")) return s;
  return guarded([&] {
    auto [pos, neg] = tailx::balance_diagnostic(
        scores->d.values, static_cast<Eigen::Index>(i),
        static_cast<Eigen::Index>(k), r0_quantile);
    *sum_pos = pos;
    *sum_neg = neg;
  });
}

tailx_status tailx_cp_factorize(const tailx_tpdm* t, size_t q, double tol,
                                size_t max_iter, size_t restarts,
                                uint64_t seed, tailx_cpfact** out) {
  if (auto s = require(t && out, "null input")) return s;
  return guarded([&] {
    tailx::CpOptions opts;
    opts.q = static_cast<Eigen::Index>(q);
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.restarts = restarts;
    opts.seed = seed;
    *out = new tailx_cpfact{tailx::cp_factorize(t->t, opts)};
  });
}

tailx_status tailx_cp_rank_search(const tailx_tpdm* t, size_t q_min,
                                  size_t q_max, double tol, size_t max_iter,
                                  size_t restarts, uint64_t seed,
                                  tailx_cpfact** out) {
  if (auto s = require(t && out, "null input")) return s;
  return guarded([&] {
    tailx::CpOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.restarts = restarts;
    opts.seed = seed;
    *out = new tailx_cpfact{tailx::cp_rank_search(
        t->t, static_cast<Eigen::Index>(q_min),
        static_cast<Eigen::Index>(q_max), opts)};
  });
}

size_t tailx_cpfact_rows(const tailx_cpfact* f) {
  return f ? static_cast<size_t>(f->f.a.rows()) : 0;
}

size_t tailx_cpfact_cols(const tailx_cpfact* f) {
  return f ? static_cast<size_t>(f->f.a.cols()) : 0;
}

tailx_status tailx_cpfact_value(const tailx_cpfact* f, size_t i, size_t j,
                                double* out) {
  if (auto s = require(f && out, "null input")) return s;
  if (i >= static_cast<size_t>(f->f.a.rows()) ||
      j >= static_cast<size_t>(f->f.a.cols())) {
    return fail(TAILX_ERR_INDEX, "factor index out of range");
  }
  *out = f->f.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return TAILX_OK;
}

double tailx_cpfact_residual(const tailx_cpfact* f) {
  return f ? f->f.residual : 0.0;
}

int tailx_cpfact_converged(const tailx_cpfact* f) {
  return (f && f->f.converged) ? 1 : 0;
}

size_t tailx_cpfact_restarts(const tailx_cpfact* f) {
  return f ? f->f.restarts_used : 0;
}

size_t tailx_cpfact_iterations(const tailx_cpfact* f) {
  return f ? f->f.iterations : 0;
}

tailx_status tailx_cpfact_to_coef(const tailx_cpfact* f, tailx_coef** out) {
  if (auto s = require(f && out, "null input")) return s;
  return guarded([&] {
    if (!f->f.converged) {
      throw std::runtime_error(
          "factorization did not converge; refusing to build a construction");
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < f->f.a.cols(); ++j) {
      if (f->f.a.col(j).maxCoeff() > 0.0) keep.push_back(j);
    }
    if (keep.empty()) throw std::domain_error("factor has no mass");
    Eigen::MatrixXd a(f->f.a.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      a.col(static_cast<Eigen::Index>(j)) = f->f.a.col(keep[j]);
    }
    *out = new tailx_coef{tailx::CoefMatrix(std::move(a), 2.0)};
  });
}

tailx_status tailx_cpfact_save_json(const tailx_cpfact* f, const char* path) {
  if (auto s = require(f && path, "null input")) return s;
  return guarded([&] { tailx::save_text(path, tailx::to_json(f->f)); });
}

tailx_status tailx_cpfact_load_json(const char* path, tailx_cpfact** out) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    *out = new tailx_cpfact{tailx::cpfact_from_json(tailx::load_text(path))};
  });
}

void tailx_cpfact_free(tailx_cpfact* f) { delete f; }

tailx_status tailx_hill(const double* x, size_t n, size_t k,
                        double* alpha_hat) {
  if (auto s = require(x && alpha_hat && n > 0, "null or empty input")) {
    return s;
  }
  return guarded([&] { *alpha_hat = tailx::hill_estimate(to_vector(x, n), k); });
}

tailx_status tailx_hill_quantile(const double* x, size_t n, double level,
                                 double* alpha_hat) {
  if (auto s = require(x && alpha_hat && n > 0, "null or empty input")) {
    return s;
  }
  return guarded([&] {
    *alpha_hat = tailx::hill_estimate_quantile(to_vector(x, n), level);
  });
}

tailx_status tailx_fit_frechet(const tailx_dataset* ds,
                               tailx_marginals** models,
                               tailx_dataset** transformed) {
  if (auto s = require(ds && models && transformed, "null input")) return s;
  return guarded([&] {
    auto res = tailx::frechet_pipeline(ds->d);
    *models = new tailx_marginals{std::move(res.models)};
    *transformed = wrap(std::move(res.transformed));
  });
}

tailx_status tailx_fit_loss(const tailx_dataset* ds, double hill_quantile,
                            tailx_marginals** models,
                            tailx_dataset** transformed) {
  if (auto s = require(ds && models && transformed, "null input")) return s;
  return guarded([&] {
    auto res = tailx::loss_pipeline(ds->d, hill_quantile);
    *models = new tailx_marginals{std::move(res.models)};
    *transformed = wrap(std::move(res.transformed));
  });
}

tailx_status tailx_marginals_apply(const tailx_marginals* models,
                                   const tailx_dataset* ds,
                                   tailx_dataset** transformed,
                                   size_t* n_clamped) {
  if (auto s = require(models && ds && transformed, "null input")) return s;
  return guarded([&] {
    auto res = tailx::apply_marginals(models->m, ds->d);
    if (n_clamped) *n_clamped = res.n_clamped;
    *transformed = wrap(std::move(res.transformed));
  });
}

tailx_status tailx_marginals_save_json(const tailx_marginals* models,
                                       const char* path) {
  if (auto s = require(models && path, "null input")) return s;
  return guarded([&] { tailx::save_text(path, tailx::to_json(models->m)); });
}

tailx_status tailx_marginals_load_json(const char* path,
                                       tailx_marginals** out) {
  if (auto s = require(path && out, "null input")) return s;
  return guarded([&] {
    *out =
        new tailx_marginals{tailx::marginals_from_json(tailx::load_text(path))};
  });
}

void tailx_marginals_free(tailx_marginals* models) { delete models; }

}  // extern "C"
