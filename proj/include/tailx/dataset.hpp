#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tailx {

/// A rectangular table of observations: one named series per column.
struct Dataset {
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // n_samp x p

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

enum class MissingPolicy { kError, kDropRow };

struct CsvReadResult {
  Dataset data;
  std::size_t rows_dropped = 0;
};

/// Reads a CSV with a header row of series names and a numeric body.
/// Ragged rows always fail (the error names the line). Non-numeric or empty
/// cells fail under kError and drop the whole row under kDropRow.
CsvReadResult read_csv(const std::string& path, MissingPolicy policy);

void write_csv(const Dataset& data, const std::string& path);

/// Headerless numeric matrix, e.g. a coefficient matrix (rows x cols).
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Fixed 17-significant-digit formatting used for every artifact this
/// library writes; parsing it back recovers the double exactly.
std::string format_double(double v);

/// Fallback names x1..xp used when a matrix has no attached series names.
std::vector<std::string> default_names(Eigen::Index p);

}  // namespace tailx
