// tailx command-line frontend. Links only the public C API; everything here
// is orchestration: CSV/JSON artifact plumbing, flag parsing, manifests.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailx.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
  tailx_status status;
  std::string message;
};

void check(tailx_status status) {
  if (status != TAILX_OK) {
    throw CliError{status, tailx_last_error()};
  }
}

// Matches the library's artifact convention: 17 significant digits.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

using ConfigItems = std::vector<std::pair<std::string, std::string>>;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{TAILX_ERR_IO, "cannot write " + path.string()};
  out << text;
}

// Every run drops a manifest with the tool version and the full flag set,
// so any artifact can be regenerated from the manifest alone.
void write_manifest(const fs::path& dir, const std::string& command,
                    const ConfigItems& config,
                    const std::vector<std::string>& artifacts) {
  std::ostringstream out;
  out << "{\"tool\":\"tailx\",\"version\":" << jstr(tailx_version())
      << ",\"command\":" << jstr(command) << ",\"config\":{";
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out << ',';
    out << jstr(config[i].first) << ':' << config[i].second;
  }
  out << "},\"artifacts\":[";
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    if (i) out << ',';
    out << jstr(artifacts[i]);
  }
  out << "]}";
  write_text(dir / "manifest.json", out.str());
}

fs::path prepare_output_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw CliError{TAILX_ERR_IO, "cannot create " + dir};
  return p;
}

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw CliError{TAILX_ERR_INVALID, "bad threshold '" + field + "'"};
    }
  }
  if (out.empty()) throw CliError{TAILX_ERR_INVALID, "no thresholds given"};
  return out;
}

double quantile_of(std::vector<double> v, double level) {
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * level;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

// RAII wrappers so error paths cannot leak handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  ~Handle() { reset(); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  void reset() {
    if (ptr) Free(ptr);
    ptr = nullptr;
  }
  T** out() {
    reset();
    return &ptr;
  }
  T* get() const { return ptr; }
};
using DatasetH = Handle<tailx_dataset, tailx_dataset_free>;
using CoefH = Handle<tailx_coef, tailx_coef_free>;
using TpdmH = Handle<tailx_tpdm, tailx_tpdm_free>;
using EigenH = Handle<tailx_eigen, tailx_eigen_free>;
using CpfactH = Handle<tailx_cpfact, tailx_cpfact_free>;
using MarginalsH = Handle<tailx_marginals, tailx_marginals_free>;

void load_dataset(const std::string& path, bool drop_rows, DatasetH& ds,
                  std::size_t* dropped) {
  check(tailx_dataset_read_csv(path.c_str(), drop_rows ? 1 : 0, ds.out(),
                               dropped));
  if (dropped && *dropped > 0) {
    std::fprintf(stderr, "warning: dropped %zu rows with missing values\n",
                 *dropped);
  }
}

// Coefficient input for simulate/riskprob: either a headerless numeric
// CSV or a factorization artifact.
void load_coef(const std::string& coef_csv, const std::string& factor_json,
               double alpha, CoefH& coef) {
  if (!coef_csv.empty() && !factor_json.empty()) {
    throw CliError{TAILX_ERR_INVALID, "give either --coef or --factor"};
  }
  if (!coef_csv.empty()) {
    check(tailx_coef_read_csv(coef_csv.c_str(), alpha, coef.out()));
  } else if (!factor_json.empty()) {
    CpfactH fact;
    check(tailx_cpfact_load_json(factor_json.c_str(), fact.out()));
    check(tailx_cpfact_to_coef(fact.get(), coef.out()));
  } else {
    throw CliError{TAILX_ERR_INVALID, "need --coef or --factor"};
  }
}

// ---- subcommands ----

int cmd_transform(const std::string& input, const std::string& output_dir,
                  const std::string& pipeline, double hill_quantile,
                  bool drop_rows) {
  const fs::path dir = prepare_output_dir(output_dir);
  DatasetH ds;
  std::size_t dropped = 0;
  load_dataset(input, drop_rows, ds, &dropped);

  MarginalsH models;
  DatasetH transformed;
  if (pipeline == "frechet") {
    check(tailx_fit_frechet(ds.get(), models.out(), transformed.out()));
  } else if (pipeline == "loss") {
    check(tailx_fit_loss(ds.get(), hill_quantile, models.out(),
                         transformed.out()));
  } else {
    throw CliError{TAILX_ERR_INVALID, "pipeline must be frechet or loss"};
  }
  check(tailx_dataset_write_csv(transformed.get(), (dir / "sample.csv").c_str()));
  check(tailx_marginals_save_json(models.get(), (dir / "marginals.json").c_str()));
  write_manifest(dir, "transform",
                 {{"input", jstr(input)},
                  {"output_dir", jstr(output_dir)},
                  {"pipeline", jstr(pipeline)},
                  {"hill_quantile", fmt(hill_quantile)},
                  {"missing", jstr(drop_rows ? "drop-row" : "error")},
                  {"rows_dropped", std::to_string(dropped)}},
                 {"sample.csv", "marginals.json"});
  return 0;
}

int cmd_estimate(const std::string& input, const std::string& output_dir,
                 double r0_quantile, const std::string& mass_mode, double mass,
                 bool drop_rows) {
  if (!(r0_quantile > 0.0 && r0_quantile < 1.0)) {
    throw CliError{TAILX_ERR_INVALID, "--r0-quantile must be in (0,1)"};
  }
  const fs::path dir = prepare_output_dir(output_dir);
  DatasetH ds;
  std::size_t dropped = 0;
  load_dataset(input, drop_rows, ds, &dropped);

  double mass_arg = 0.0;  // <= 0 selects the empirical estimate
  if (mass_mode == "known") {
    mass_arg = mass > 0.0 ? mass
                          : static_cast<double>(tailx_dataset_cols(ds.get()));
  } else if (mass_mode != "empirical") {
    throw CliError{TAILX_ERR_INVALID, "--mass-mode must be known or empirical"};
  }
  TpdmH tpdm;
  check(tailx_estimate_tpdm(ds.get(), 1, r0_quantile, mass_arg, tpdm.out()));
  check(tailx_tpdm_save_json(tpdm.get(), (dir / "tpdm.json").c_str()));
  write_manifest(dir, "estimate",
                 {{"input", jstr(input)},
                  {"output_dir", jstr(output_dir)},
                  {"r0_quantile", fmt(r0_quantile)},
                  {"mass_mode", jstr(mass_mode)},
                  {"mass", fmt(mass_arg)},
                  {"missing", jstr(drop_rows ? "drop-row" : "error")},
                  {"rows_dropped", std::to_string(dropped)}},
                 {"tpdm.json"});
  return 0;
}

int cmd_eigen(const std::string& input, const std::string& output_dir) {
  const fs::path dir = prepare_output_dir(output_dir);
  TpdmH tpdm;
  check(tailx_tpdm_load_json(input.c_str(), tpdm.out()));
  EigenH eig;
  check(tailx_eigen_decompose(tpdm.get(), eig.out()));
  check(tailx_eigen_save_json(eig.get(), (dir / "eigen.json").c_str()));

  const std::size_t p = tailx_eigen_dim(eig.get());
  double total = 0.0;
  std::vector<double> lambdas(p);
  for (std::size_t i = 0; i < p; ++i) {
    check(tailx_eigen_lambda(eig.get(), i, &lambdas[i]));
    total += lambdas[i];
  }
  std::ostringstream scree;
  scree << "index,lambda,fraction\n";
  for (std::size_t i = 0; i < p; ++i) {
    scree << (i + 1) << ',' << fmt(lambdas[i]) << ','
          << fmt(total > 0 ? lambdas[i] / total : 0.0) << '\n';
  }
  write_text(dir / "scree.csv", scree.str());
  write_manifest(dir, "eigen",
                 {{"input", jstr(input)}, {"output_dir", jstr(output_dir)}},
                 {"eigen.json", "scree.csv"});
  return 0;
}

int cmd_project(const std::string& input, const std::string& eigen_path,
                const std::string& output_dir, bool drop_rows) {
  const fs::path dir = prepare_output_dir(output_dir);
  DatasetH ds;
  std::size_t dropped = 0;
  load_dataset(input, drop_rows, ds, &dropped);
  EigenH eig;
  check(tailx_eigen_load_json(eigen_path.c_str(), eig.out()));
  DatasetH scores;
  check(tailx_project(ds.get(), eig.get(), scores.out()));
  check(tailx_dataset_write_csv(scores.get(), (dir / "scores.csv").c_str()));
  write_manifest(dir, "project",
                 {{"input", jstr(input)},
                  {"eigen", jstr(eigen_path)},
                  {"output_dir", jstr(output_dir)},
                  {"missing", jstr(drop_rows ? "drop-row" : "error")}},
                 {"scores.csv"});
  return 0;
}

int cmd_reconstruct(const std::string& input, const std::string& eigen_path,
                    std::size_t k, const std::string& output_dir) {
  const fs::path dir = prepare_output_dir(output_dir);
  DatasetH scores;
  std::size_t dropped = 0;
  load_dataset(input, false, scores, &dropped);
  EigenH eig;
  check(tailx_eigen_load_json(eigen_path.c_str(), eig.out()));
  DatasetH recon;
  check(tailx_reconstruct(scores.get(), eig.get(), k, recon.out()));
  check(tailx_dataset_write_csv(recon.get(), (dir / "sample.csv").c_str()));
  write_manifest(dir, "reconstruct",
                 {{"input", jstr(input)},
                  {"eigen", jstr(eigen_path)},
                  {"k", std::to_string(k)},
                  {"output_dir", jstr(output_dir)}},
                 {"sample.csv"});
  return 0;
}

int cmd_factorize(const std::string& input, const std::string& output_dir,
                  std::size_t q, double tol, std::size_t max_iter,
                  std::size_t restarts, std::uint64_t seed) {
  const fs::path dir = prepare_output_dir(output_dir);
  TpdmH tpdm;
  check(tailx_tpdm_load_json(input.c_str(), tpdm.out()));
  CpfactH fact;
  check(tailx_cp_factorize(tpdm.get(), q, tol, max_iter, restarts, seed,
                           fact.out()));
  check(tailx_cpfact_save_json(fact.get(), (dir / "factor.json").c_str()));
  if (!tailx_cpfact_converged(fact.get())) {
    std::fprintf(stderr,
                 "warning: factorization did not converge (residual %s)\n",
                 fmt(tailx_cpfact_residual(fact.get())).c_str());
  }
  write_manifest(dir, "factorize",
                 {{"input", jstr(input)},
                  {"output_dir", jstr(output_dir)},
                  {"q", std::to_string(q)},
                  {"tol", fmt(tol)},
                  {"max_iter", std::to_string(max_iter)},
                  {"restarts", std::to_string(restarts)},
                  {"seed", std::to_string(seed)}},
                 {"factor.json"});
  return 0;
}

int cmd_simulate(const std::string& coef_csv, const std::string& factor_json,
                 double alpha, std::size_t n, std::uint64_t seed,
                 bool max_linear, const std::string& output_dir) {
  const fs::path dir = prepare_output_dir(output_dir);
  CoefH coef;
  load_coef(coef_csv, factor_json, alpha, coef);
  DatasetH sample;
  if (max_linear) {
    check(tailx_simulate_max_linear(coef.get(), n, seed, sample.out()));
  } else {
    check(tailx_simulate(coef.get(), n, seed, sample.out()));
  }
  check(tailx_dataset_write_csv(sample.get(), (dir / "sample.csv").c_str()));
  write_manifest(dir, "simulate",
                 {{"coef", jstr(coef_csv)},
                  {"factor", jstr(factor_json)},
                  {"alpha", fmt(alpha)},
                  {"n", std::to_string(n)},
                  {"seed", std::to_string(seed)},
                  {"max_linear", max_linear ? "true" : "false"},
                  {"output_dir", jstr(output_dir)}},
                 {"sample.csv"});
  return 0;
}

int cmd_riskprob(const std::string& coef_csv, const std::string& factor_json,
                 const std::string& thresholds_text,
                 const std::string& output_dir) {
  const fs::path dir = prepare_output_dir(output_dir);
  CoefH coef;
  load_coef(coef_csv, factor_json, 2.0, coef);
  const std::vector<double> u = parse_thresholds(thresholds_text);
  if (u.size() != tailx_coef_rows(coef.get())) {
    throw CliError{TAILX_ERR_INVALID,
                   "threshold count must match the construction dimension"};
  }
  double joint = 0.0, uni = 0.0;
  check(tailx_joint_exceedance(coef.get(), u.data(), u.size(), &joint));
  check(tailx_union_exceedance(coef.get(), u.data(), u.size(), &uni));

  // With unit-scale margins and tail index 2 the normalization cancels,
  // so the measures double as tail probability estimates.
  std::ostringstream out;
  out << "{\"alpha\":" << fmt(tailx_coef_alpha(coef.get()))
      << ",\"thresholds\":[";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out << ',';
    out << fmt(u[i]);
  }
  out << "],\"joint_measure\":" << fmt(joint)
      << ",\"union_measure\":" << fmt(uni)
      << ",\"prob_all_exceed\":" << fmt(joint)
      << ",\"prob_any_exceed\":" << fmt(uni) << "}";
  write_text(dir / "risk.json", out.str());
  write_manifest(dir, "riskprob",
                 {{"coef", jstr(coef_csv)},
                  {"factor", jstr(factor_json)},
                  {"thresholds", jstr(thresholds_text)},
                  {"output_dir", jstr(output_dir)}},
                 {"risk.json"});
  return 0;
}

// ---- mccheck: the Monte Carlo invariant suite ----

struct McCheck {
  std::string name;
  double observed;
  double expected;
  double tolerance;  // absolute when expected is 0, else on |obs - exp|
  bool pass;
};

void sim_dataset(const std::vector<double>& entries, std::size_t p,
                 std::size_t q, std::size_t n, std::uint64_t seed,
                 DatasetH& ds) {
  CoefH coef;
  check(tailx_coef_create(entries.data(), p, q, 2.0, coef.out()));
  check(tailx_simulate(coef.get(), n, seed, ds.out()));
}

int cmd_mccheck(std::uint64_t seed, std::size_t n,
                const std::string& output_dir) {
  const fs::path dir = prepare_output_dir(output_dir);
  std::vector<McCheck> checks;

  const std::vector<double> a1 = {0.45, 0.315, 0.0, 0.315};       // 2x2
  const std::vector<double> a2 = {0.225, 0.0, 0.225, 0.36};       // 2x2
  auto closed_sigma = [&](const std::vector<double>& a, std::size_t p,
                          std::size_t q) {
    CoefH coef;
    check(tailx_coef_create(a.data(), p, q, 2.0, coef.out()));
    TpdmH t;
    check(tailx_tpdm_from_coef(coef.get(), t.out()));
    std::vector<double> sig(p * p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        check(tailx_tpdm_value(t.get(), i, j, &sig[i * p + j]));
      }
    }
    return sig;
  };

  {  // sums of independent constructions add their dependence matrices
    DatasetH x1, x2;
    sim_dataset(a1, 2, 2, n, seed + 1, x1);
    sim_dataset(a2, 2, 2, n, seed + 2, x2);
    std::vector<double> sum_values(n * 2);
    std::vector<double> row1(2), row2(2), out(2);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < 2; ++j) {
        check(tailx_dataset_value(x1.get(), t, j, &row1[j]));
        check(tailx_dataset_value(x2.get(), t, j, &row2[j]));
      }
      check(tailx_vec_add(row1.data(), row2.data(), 2, out.data()));
      sum_values[2 * t] = out[0];
      sum_values[2 * t + 1] = out[1];
    }
    DatasetH sum_ds;
    check(tailx_dataset_create(nullptr, sum_values.data(), n, 2,
                               sum_ds.out()));
    const auto s1 = closed_sigma(a1, 2, 2);
    const auto s2 = closed_sigma(a2, 2, 2);
    const double mass = s1[0] + s1[3] + s2[0] + s2[3];
    TpdmH est;
    check(tailx_estimate_tpdm(sum_ds.get(), 1, 0.995, mass, est.out()));
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        double v = 0.0;
        check(tailx_tpdm_value(est.get(), i, j, &v));
        err = std::max(err, std::abs(v - (s1[i * 2 + j] + s2[i * 2 + j])));
      }
    }
    checks.push_back({"sum_preserves_dependence", err, 0.0, 0.15, err < 0.15});
  }

  {  // scaling by a > 0 multiplies the dependence matrix by a^2
    const std::vector<double> a3 = {0.357, 0.107, 0.107, 0.286};  // 2x2
    const auto s3 = closed_sigma(a3, 2, 2);
    DatasetH x;
    sim_dataset(a3, 2, 2, n, seed + 3, x);
    const double a = 2.0;
    std::vector<double> scaled(n * 2), row(2), out(2);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < 2; ++j) {
        check(tailx_dataset_value(x.get(), t, j, &row[j]));
      }
      check(tailx_vec_scale(a, row.data(), 2, out.data()));
      scaled[2 * t] = out[0];
      scaled[2 * t + 1] = out[1];
    }
    DatasetH scaled_ds;
    check(tailx_dataset_create(nullptr, scaled.data(), n, 2, scaled_ds.out()));
    TpdmH est;
    check(tailx_estimate_tpdm(scaled_ds.get(), 1, 0.995,
                              a * a * (s3[0] + s3[3]), est.out()));
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        double v = 0.0;
        check(tailx_tpdm_value(est.get(), i, j, &v));
        err = std::max(err, std::abs(v - a * a * s3[i * 2 + j]));
      }
    }
    checks.push_back({"positive_scaling_squares", err, 0.0, 0.15, err < 0.15});
  }

  {  // scaling by a <= 0 kills the tail: the deep quantile stays bounded
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<double> au = {inv_sqrt2, inv_sqrt2, 0.0,
                                    inv_sqrt2, 0.0,       inv_sqrt2};  // 2x3
    DatasetH x;
    sim_dataset(au, 2, 3, n, seed + 4, x);
    std::vector<double> flipped(n), margin(n), row(2), out(2);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < 2; ++j) {
        check(tailx_dataset_value(x.get(), t, j, &row[j]));
      }
      check(tailx_vec_scale(-1.0, row.data(), 2, out.data()));
      flipped[t] = out[0];
      margin[t] = row[0];
    }
    const double q_flip = quantile_of(flipped, 0.9999);
    const double q_orig = quantile_of(margin, 0.9999);
    checks.push_back({"negative_scaling_bounded", q_flip, 0.0, 10.0,
                      q_flip < 10.0 && q_orig > 50.0});
  }

  {  // closed-form exceedance measures vs the n-scaled empirical count
    const std::size_t n_mc = 10 * n;
    const std::vector<double> a5 = {30.0, 40.0};
    CoefH coef;
    check(tailx_coef_create(a5.data(), 2, 1, 2.0, coef.out()));
    DatasetH x;
    check(tailx_simulate(coef.get(), n_mc, seed + 5, x.out()));
    const double u[2] = {1.0, 1.2};
    double joint = 0.0, uni = 0.0;
    check(tailx_joint_exceedance(coef.get(), u, 2, &joint));
    check(tailx_union_exceedance(coef.get(), u, 2, &uni));
    const double s = std::sqrt(static_cast<double>(n_mc));
    std::size_t cj = 0, cu = 0;
    double v0 = 0.0, v1 = 0.0;
    for (std::size_t t = 0; t < n_mc; ++t) {
      check(tailx_dataset_value(x.get(), t, 0, &v0));
      check(tailx_dataset_value(x.get(), t, 1, &v1));
      const bool e0 = v0 > s * u[0], e1 = v1 > s * u[1];
      cj += (e0 && e1) ? 1 : 0;
      cu += (e0 || e1) ? 1 : 0;
    }
    const double mj = static_cast<double>(cj);
    const double mu = static_cast<double>(cu);
    checks.push_back({"joint_measure_matches_mc", mj, joint, 0.15,
                      std::abs(mj - joint) < 0.15 * joint});
    checks.push_back({"union_measure_matches_mc", mu, uni, 0.15,
                      std::abs(mu - uni) < 0.15 * uni});
  }

  {  // max-linear and transformed-linear constructions share the estimate
    const std::vector<double> am = {0.45, 0.315, 0.0, 0.315};
    CoefH coef;
    check(tailx_coef_create(am.data(), 2, 2, 2.0, coef.out()));
    DatasetH xt, xm;
    check(tailx_simulate(coef.get(), n, seed + 6, xt.out()));
    check(tailx_simulate_max_linear(coef.get(), n, seed + 6, xm.out()));
    const auto sm = closed_sigma(am, 2, 2);
    const double mass = sm[0] + sm[3];
    TpdmH et, em;
    check(tailx_estimate_tpdm(xt.get(), 1, 0.995, mass, et.out()));
    check(tailx_estimate_tpdm(xm.get(), 1, 0.995, mass, em.out()));
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        double a = 0.0, b = 0.0;
        check(tailx_tpdm_value(et.get(), i, j, &a));
        check(tailx_tpdm_value(em.get(), i, j, &b));
        err = std::max(err, std::abs(a - b));
      }
    }
    checks.push_back({"max_linear_agrees", err, 0.0, 0.1, err < 0.1});
  }

  bool all_pass = true;
  std::ostringstream out;
  out << "{\"seed\":" << seed << ",\"n\":" << n << ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    all_pass = all_pass && c.pass;
    if (i) out << ',';
    out << "{\"name\":" << jstr(c.name) << ",\"observed\":" << fmt(c.observed)
        << ",\"expected\":" << fmt(c.expected)
        << ",\"tolerance\":" << fmt(c.tolerance)
        << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    std::fprintf(stderr, "%s %s\n", c.pass ? "pass" : "FAIL", c.name.c_str());
  }
  out << "],\"pass\":" << (all_pass ? "true" : "false") << "}";
  write_text(dir / "mccheck.json", out.str());
  write_manifest(dir, "mccheck",
                 {{"seed", std::to_string(seed)},
                  {"n", std::to_string(n)},
                  {"output_dir", jstr(output_dir)}},
                 {"mccheck.json"});
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transformed-linear tail dependence toolkit"};
  app.require_subcommand(1);

  std::string input, output_dir, eigen_path, coef_csv, factor_json;
  std::string pipeline = "frechet", mass_mode = "empirical", thresholds;
  std::string missing = "error";
  double r0_quantile = 0.95, hill_quantile = 0.99, tol = 1e-8, alpha = 2.0;
  double mass = 0.0;
  std::size_t q = 0, max_iter = 5000, restarts = 20, k = 1, n = 0;
  std::size_t mc_n = 100000;
  std::uint64_t seed = 0;

  auto* c_transform = app.add_subcommand("transform", "marginal preprocessing");
  c_transform->add_option("--input", input)->required();
  c_transform->add_option("--output-dir", output_dir)->required();
  c_transform->add_option("--pipeline", pipeline,
                          "frechet (rank transform) or loss (negated returns)");
  c_transform->add_option("--hill-quantile", hill_quantile);
  c_transform->add_option("--missing", missing, "error or drop-row");

  auto* c_estimate = app.add_subcommand("estimate", "dependence matrix");
  c_estimate->add_option("--input", input)->required();
  c_estimate->add_option("--output-dir", output_dir)->required();
  c_estimate->add_option("--r0-quantile", r0_quantile);
  c_estimate->add_option("--mass-mode", mass_mode, "known or empirical");
  c_estimate->add_option("--mass", mass, "total mass when known (default p)");
  c_estimate->add_option("--missing", missing);

  auto* c_eigen = app.add_subcommand("eigen", "eigendecomposition + scree");
  c_eigen->add_option("--input", input, "tpdm.json")->required();
  c_eigen->add_option("--output-dir", output_dir)->required();

  auto* c_project = app.add_subcommand("project", "scores in the eigenbasis");
  c_project->add_option("--input", input)->required();
  c_project->add_option("--eigen", eigen_path)->required();
  c_project->add_option("--output-dir", output_dir)->required();
  c_project->add_option("--missing", missing);

  auto* c_recon = app.add_subcommand("reconstruct", "partial reconstruction");
  c_recon->add_option("--input", input, "scores.csv")->required();
  c_recon->add_option("--eigen", eigen_path)->required();
  c_recon->add_option("--k", k, "number of leading terms")->required();
  c_recon->add_option("--output-dir", output_dir)->required();

  auto* c_fact = app.add_subcommand("factorize", "nonnegative factorization");
  c_fact->add_option("--input", input, "tpdm.json")->required();
  c_fact->add_option("--output-dir", output_dir)->required();
  c_fact->add_option("--q", q, "factor width (0 = default)");
  c_fact->add_option("--tol", tol);
  c_fact->add_option("--max-iter", max_iter);
  c_fact->add_option("--restarts", restarts);
  c_fact->add_option("--seed", seed)->required();

  auto* c_sim = app.add_subcommand("simulate", "draw from a construction");
  c_sim->add_option("--coef", coef_csv, "headerless coefficient CSV");
  c_sim->add_option("--factor", factor_json, "factor.json");
  c_sim->add_option("--alpha", alpha, "noise tail index for --coef");
  c_sim->add_option("--n", n)->required();
  c_sim->add_option("--seed", seed)->required();
  c_sim->add_flag("--max-linear", "componentwise maxima instead");
  c_sim->add_option("--output-dir", output_dir)->required();

  auto* c_risk = app.add_subcommand("riskprob", "tail risk-region measures");
  c_risk->add_option("--coef", coef_csv);
  c_risk->add_option("--factor", factor_json);
  c_risk->add_option("--thresholds", thresholds, "comma-separated")->required();
  c_risk->add_option("--output-dir", output_dir)->required();

  auto* c_mc = app.add_subcommand("mccheck", "Monte Carlo invariant suite");
  c_mc->add_option("--seed", seed)->required();
  c_mc->add_option("--n", mc_n, "sample size per check");
  c_mc->add_option("--output-dir", output_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const bool drop_rows = missing == "drop-row";
    if (missing != "error" && missing != "drop-row") {
      throw CliError{TAILX_ERR_INVALID, "--missing must be error or drop-row"};
    }
    if (c_transform->parsed()) {
      return cmd_transform(input, output_dir, pipeline, hill_quantile,
                           drop_rows);
    }
    if (c_estimate->parsed()) {
      return cmd_estimate(input, output_dir, r0_quantile, mass_mode, mass,
                          drop_rows);
    }
    if (c_eigen->parsed()) return cmd_eigen(input, output_dir);
    if (c_project->parsed()) {
      return cmd_project(input, eigen_path, output_dir, drop_rows);
    }
    if (c_recon->parsed()) {
      return cmd_reconstruct(input, eigen_path, k, output_dir);
    }
    if (c_fact->parsed()) {
      return cmd_factorize(input, output_dir, q, tol, max_iter, restarts,
                           seed);
    }
    if (c_sim->parsed()) {
      return cmd_simulate(coef_csv, factor_json, alpha, n, seed,
                          c_sim->count("--max-linear") > 0, output_dir);
    }
    if (c_risk->parsed()) {
      return cmd_riskprob(coef_csv, factor_json, thresholds, output_dir);
    }
    if (c_mc->parsed()) return cmd_mccheck(seed, mc_n, output_dir);
    return 1;
  } catch (const CliError& e) {
    std::fprintf(stderr,
                 "{\"error\":{\"code\":%d,\"kind\":%s,\"message\":%s}}\n",
                 static_cast<int>(e.status),
                 jstr(tailx_status_name(e.status)).c_str(),
                 jstr(e.message).c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr,
                 "{\"error\":{\"code\":%d,\"kind\":\"internal_error\","
                 "\"message\":%s}}\n",
                 static_cast<int>(TAILX_ERR_INTERNAL), jstr(e.what()).c_str());
    return 1;
  }
}
