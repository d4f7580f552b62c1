#pragma once

#include <Eigen/Dense>

#include "satfake/stats.hpp"

namespace satfake::stats::detail {

/// Flip each column so that its largest-|.| entry is positive, applying the
/// same flips to the companion's columns.
void fix_signs(Eigen::MatrixXd& m, Eigen::MatrixXd* companion);

/// Names components prefix1..k and labels each by its largest-|loading| column.
void label_components(PcaModel& m, const char* prefix);

}  // namespace satfake::stats::detail
