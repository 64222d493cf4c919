#include "tailx/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tailx/dataset.hpp"
#include "tailx/transform.hpp"

namespace tailx {

namespace {

// Minimal streaming JSON emitter; every number goes through
// format_double so artifact bytes depend only on the values.
class JsonOut {
 public:
  JsonOut& raw(const std::string& s) {
    buf_ << s;
    return *this;
  }
  JsonOut& key(const std::string& k) {
    sep();
    buf_ << '"' << k << "\":";
    pending_ = false;
    return *this;
  }
  JsonOut& value(double v) {
    sep();
    buf_ << format_double(v);
    pending_ = true;
    return *this;
  }
  JsonOut& value(std::size_t v) {
    sep();
    buf_ << v;
    pending_ = true;
    return *this;
  }
  JsonOut& value(bool v) {
    sep();
    buf_ << (v ? "true" : "false");
    pending_ = true;
    return *this;
  }
  JsonOut& value(const std::string& s) {
    sep();
    buf_ << '"';
    for (char c : s) {
      if (c == '"' || c == '\\') buf_ << '\\';
      buf_ << c;
    }
    buf_ << '"';
    pending_ = true;
    return *this;
  }
  JsonOut& null() {
    sep();
    buf_ << "null";
    pending_ = true;
    return *this;
  }
  JsonOut& begin(char c) {
    sep();
    buf_ << c;
    pending_ = false;
    return *this;
  }
  JsonOut& end(char c) {
    buf_ << c;
    pending_ = true;
    return *this;
  }
  std::string str() const { return buf_.str(); }

 private:
  void sep() {
    if (pending_) buf_ << ',';
    pending_ = false;
  }
  std::ostringstream buf_;
  bool pending_ = false;
};

void write_row_major(JsonOut& out, const Eigen::MatrixXd& m) {
  out.begin('[');
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.value(m(i, j));
    }
  }
  out.end(']');
}

void write_names(JsonOut& out, const std::vector<std::string>& names) {
  out.begin('[');
  for (const auto& n : names) out.value(n);
  out.end(']');
}

Eigen::MatrixXd read_row_major(const nlohmann::json& arr, Eigen::Index rows,
                               Eigen::Index cols, const char* what) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::runtime_error(std::string(what) + ": bad matrix payload");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = arr[idx++].get<double>();
    }
  }
  return m;
}

std::vector<std::string> read_names(const nlohmann::json& arr) {
  std::vector<std::string> names;
  for (const auto& v : arr) names.push_back(v.get<std::string>());
  return names;
}

}  // namespace

std::string to_json(const Tpdm& t) {
  JsonOut out;
  out.begin('{');
  out.key("p").value(static_cast<std::size_t>(t.dim()));
  out.key("names");
  write_names(out, t.names);
  out.key("sigma");
  write_row_major(out, t.sigma);
  out.key("total_mass").value(t.total_mass);
  out.key("n_exc").value(t.n_exc);
  out.key("r0");
  if (t.r0) {
    out.value(*t.r0);
  } else {
    out.null();
  }
  out.end('}');
  return out.str();
}

Tpdm tpdm_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto p = j.at("p").get<Eigen::Index>();
  Eigen::MatrixXd sigma = read_row_major(j.at("sigma"), p, p, "tpdm");
  std::optional<double> r0;
  if (!j.at("r0").is_null()) r0 = j.at("r0").get<double>();
  return Tpdm::from_matrix(std::move(sigma), read_names(j.at("names")),
                           j.at("n_exc").get<std::size_t>(), r0);
}

std::string to_json(const EigenBasis& basis) {
  JsonOut out;
  out.begin('{');
  out.key("lambdas");
  out.begin('[');
  for (Eigen::Index i = 0; i < basis.lambdas.size(); ++i) {
    out.value(basis.lambdas[i]);
  }
  out.end(']');
  out.key("U");
  write_row_major(out, basis.u);
  out.key("names");
  write_names(out, basis.names);
  out.end('}');
  return out.str();
}

EigenBasis eigen_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto& lam = j.at("lambdas");
  const auto p = static_cast<Eigen::Index>(lam.size());
  EigenBasis basis;
  basis.lambdas.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    basis.lambdas[i] = lam[static_cast<std::size_t>(i)].get<double>();
    if (i > 0 && basis.lambdas[i] > basis.lambdas[i - 1] + 1e-10) {
      throw std::runtime_error("eigen basis: eigenvalues not descending");
    }
  }
  basis.u = read_row_major(j.at("U"), p, p, "eigen basis");
  if ((basis.u.transpose() * basis.u - Eigen::MatrixXd::Identity(p, p))
          .cwiseAbs()
          .maxCoeff() > 1e-9) {
    throw std::runtime_error("eigen basis: U is not orthonormal");
  }
  basis.names = read_names(j.at("names"));
  if (basis.names.empty()) basis.names = default_names(p);
  basis.basis = softplus(basis.u);
  return basis;
}

std::string to_json(const CpFactorization& f) {
  JsonOut out;
  out.begin('{');
  out.key("p").value(static_cast<std::size_t>(f.a.rows()));
  out.key("q").value(static_cast<std::size_t>(f.a.cols()));
  out.key("A");
  write_row_major(out, f.a);
  out.key("residual").value(f.residual);
  out.key("converged").value(f.converged);
  out.key("restarts").value(f.restarts_used);
  out.end('}');
  return out.str();
}

CpFactorization cpfact_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto p = j.at("p").get<Eigen::Index>();
  const auto q = j.at("q").get<Eigen::Index>();
  CpFactorization f;
  f.a = read_row_major(j.at("A"), p, q, "factorization");
  if (f.a.minCoeff() < -1e-10) {
    throw std::runtime_error("factorization: factor has negative entries");
  }
  f.residual = j.at("residual").get<double>();
  f.converged = j.at("converged").get<bool>();
  f.restarts_used = j.at("restarts").get<std::size_t>();
  return f;
}

std::string to_json(const MarginalSet& models) {
  JsonOut out;
  out.begin('{');
  out.key("p").value(models.models.size());
  out.key("models");
  out.begin('[');
  for (const auto& m : models.models) {
    out.begin('{');
    out.key("name").value(m.name);
    if (std::holds_alternative<EcdfFrechetModel>(m.model)) {
      const auto& e = std::get<EcdfFrechetModel>(m.model);
      out.key("kind").value(std::string("ecdf_frechet"));
      out.key("ref_values");
      out.begin('[');
      for (double v : e.ref_values) out.value(v);
      out.end(']');
      out.key("ref_positions");
      out.begin('[');
      for (double v : e.ref_positions) out.value(v);
      out.end(']');
    } else {
      const auto& h = std::get<LossHillModel>(m.model);
      out.key("kind").value(std::string("loss_hill"));
      out.key("alpha_hat").value(h.alpha_hat);
      out.key("c_hat").value(h.c_hat);
      out.key("threshold_quantile").value(h.threshold_quantile);
      out.key("c_hat_recipe").value(
          std::string("k/n * u^alpha at the Hill threshold u"));
    }
    out.end('}');
  }
  out.end(']');
  out.end('}');
  return out.str();
}

MarginalSet marginals_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MarginalSet out;
  for (const auto& jm : j.at("models")) {
    MarginalModel m;
    m.name = jm.at("name").get<std::string>();
    const auto kind = jm.at("kind").get<std::string>();
    if (kind == "ecdf_frechet") {
      EcdfFrechetModel e;
      e.ref_values = jm.at("ref_values").get<std::vector<double>>();
      e.ref_positions = jm.at("ref_positions").get<std::vector<double>>();
      if (e.ref_values.size() != e.ref_positions.size() ||
          e.ref_values.size() < 2) {
        throw std::runtime_error("marginals: malformed ecdf model");
      }
      for (std::size_t i = 1; i < e.ref_values.size(); ++i) {
        if (e.ref_values[i] <= e.ref_values[i - 1]) {
          throw std::runtime_error("marginals: reference values not increasing");
        }
      }
      m.model = std::move(e);
    } else if (kind == "loss_hill") {
      LossHillModel h;
      h.alpha_hat = jm.at("alpha_hat").get<double>();
      h.c_hat = jm.at("c_hat").get<double>();
      h.threshold_quantile = jm.at("threshold_quantile").get<double>();
      if (!(h.alpha_hat > 0.0) || !(h.c_hat > 0.0)) {
        throw std::runtime_error("marginals: nonpositive alpha or c");
      }
      m.model = h;
    } else {
      throw std::runtime_error("marginals: unknown kind " + kind);
    }
    out.models.push_back(std::move(m));
  }
  return out;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tailx
