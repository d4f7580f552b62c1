#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace satfake {

/// Column-wise standardization parameters (sample SD, n - 1 denominator).
struct Standardization {
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<std::string> dropped;  // constant columns removed before scaling
};

/// n articles by p named columns.
struct FeatureMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> column_names;
  Eigen::MatrixXd values;
  /// Same shape as values when present; 1 marks an undefined-defaulted cell.
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> flags;
  std::optional<Standardization> standardization;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  /// Index of the named column, or -1.
  Eigen::Index column(const std::string& name) const;
};

}  // namespace satfake
