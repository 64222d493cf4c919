#include "tailx/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tailx {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_cell(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::vector<double>> read_rows(std::istream& in,
                                           std::size_t n_fields,
                                           std::size_t first_line,
                                           MissingPolicy policy,
                                           std::size_t& dropped) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = first_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != n_fields) {
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected " + std::to_string(n_fields) +
                               " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(n_fields);
    bool ok = true;
    for (std::size_t j = 0; j < n_fields; ++j) {
      if (!parse_cell(fields[j], row[j])) {
        if (policy == MissingPolicy::kError) {
          throw std::runtime_error("csv line " + std::to_string(line_no) +
                                   ": non-numeric cell '" + fields[j] + "'");
        }
        ok = false;
        break;
      }
    }
    if (ok) {
      rows.push_back(std::move(row));
    } else {
      ++dropped;
    }
  }
  return rows;
}

}  // namespace

CsvReadResult read_csv(const std::string& path, MissingPolicy policy) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("csv " + path + ": empty file");
  }
  CsvReadResult result;
  result.data.names = split_fields(header);
  if (result.data.names.empty()) {
    throw std::runtime_error("csv " + path + ": empty header");
  }
  const auto rows = read_rows(in, result.data.names.size(), 1, policy,
                              result.rows_dropped);
  const auto p = static_cast<Eigen::Index>(result.data.names.size());
  result.data.values.resize(static_cast<Eigen::Index>(rows.size()), p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      result.data.values(static_cast<Eigen::Index>(i), j) =
          rows[i][static_cast<std::size_t>(j)];
    }
  }
  return result;
}

void write_csv(const Dataset& data, const std::string& path) {
  if (static_cast<Eigen::Index>(data.names.size()) != data.cols()) {
    throw std::invalid_argument("write_csv: name count mismatch");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t j = 0; j < data.names.size(); ++j) {
    if (j) out << ',';
    out << data.names[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (j) out << ',';
      out << format_double(data.values(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::size_t dropped = 0;
  std::string first;
  std::streampos start = in.tellg();
  if (!std::getline(in, first) || trim(first).empty()) {
    throw std::runtime_error("matrix csv " + path + ": empty file");
  }
  in.seekg(start);
  const std::size_t n_fields = split_fields(first).size();
  const auto rows = read_rows(in, n_fields, 0, MissingPolicy::kError, dropped);
  if (rows.empty()) throw std::runtime_error("matrix csv " + path + ": no rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(n_fields));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n_fields; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> default_names(Eigen::Index p) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace tailx
