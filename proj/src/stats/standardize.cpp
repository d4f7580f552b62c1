#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "satfake/error.hpp"
#include "satfake/stats.hpp"

namespace satfake::stats {

FeatureMatrix standardize(const FeatureMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n < 2) throw ValidationError(fmt::format("standardize needs at least 2 rows, got {}", n));
  if (!m.values.allFinite()) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!std::isfinite(m.values(i, j))) {
          throw ValidationError(fmt::format("non-finite value at row '{}', column '{}'",
                                            m.row_ids.empty() ? std::to_string(i) : m.row_ids[static_cast<std::size_t>(i)],
                                            m.column_names[static_cast<std::size_t>(j)]));
        }
      }
    }
  }

  Standardization params;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const auto col = m.values.col(j);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n - 1));
    const double scale = std::max(1.0, col.cwiseAbs().maxCoeff());
    if (!(sd > 1e-12 * scale)) {
      params.dropped.push_back(m.column_names[static_cast<std::size_t>(j)]);
      continue;
    }
    keep.push_back(j);
    params.mean.push_back(mean);
    params.sd.push_back(sd);
  }

  FeatureMatrix out;
  out.row_ids = m.row_ids;
  out.values.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out.column_names.push_back(m.column_names[static_cast<std::size_t>(keep[k])]);
    out.values.col(kk) = (m.values.col(keep[k]).array() - params.mean[k]) / params.sd[k];
  }
  out.standardization = std::move(params);
  return out;
}

Eigen::MatrixXd apply_standardization(const FeatureMatrix& raw, const std::vector<std::string>& columns,
                                      const Standardization& params) {
  std::vector<std::string> missing;
  std::vector<Eigen::Index> idx;
  for (const auto& c : columns) {
    const auto j = raw.column(c);
    if (j < 0) missing.push_back(c);
    idx.push_back(j);
  }
  if (!missing.empty()) throw ValidationError(fmt::format("missing columns: {}", fmt::join(missing, ", ")));
  Eigen::MatrixXd z(raw.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    z.col(static_cast<Eigen::Index>(k)) = (raw.values.col(idx[k]).array() - params.mean[k]) / params.sd[k];
  }
  return z;
}

}  // namespace satfake::stats
