#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/stats.hpp"
#include "stats_internal.hpp"

namespace satfake::stats {

double varimax_criterion(const Eigen::MatrixXd& l) {
  const double p = static_cast<double>(l.rows());
  double total = 0.0;
  for (Eigen::Index c = 0; c < l.cols(); ++c) {
    const Eigen::ArrayXd sq = l.col(c).array().square();
    total += sq.square().sum() / p - std::pow(sq.sum() / p, 2);
  }
  return total;
}

PcaModel varimax_rotate(const PcaModel& model, const VarimaxOptions& options) {
  const Eigen::Index k = model.retained();
  if (k < 2) return model;
  const Eigen::MatrixXd a = factor_loadings(model);
  const Eigen::Index p = a.rows();

  Eigen::VectorXd h = a.rowwise().norm();
  Eigen::MatrixXd b = a;
  if (options.kaiser_normalize) {
    for (Eigen::Index i = 0; i < p; ++i) {
      if (h(i) > 0.0) b.row(i) /= h(i);
    }
  }

  PcaModel out = model;
  out.varimax_criterion.clear();
  out.varimax_criterion.push_back(varimax_criterion(b));
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(k, k);
  const double pd = static_cast<double>(p);
  int sweep = 0;
  for (;; ++sweep) {
    if (sweep >= options.max_sweeps) {
      throw ConvergenceError(fmt::format("varimax did not converge in {} sweeps", options.max_sweeps));
    }
    double max_angle = 0.0;
    for (Eigen::Index j = 0; j < k - 1; ++j) {
      for (Eigen::Index l = j + 1; l < k; ++l) {
        const Eigen::ArrayXd x = b.col(j).array();
        const Eigen::ArrayXd y = b.col(l).array();
        const Eigen::ArrayXd u = x.square() - y.square();
        const Eigen::ArrayXd v = 2.0 * x * y;
        const double sa = u.sum();
        const double sb = v.sum();
        const double sc = (u.square() - v.square()).sum();
        const double sd = 2.0 * (u * v).sum();
        const double phi = 0.25 * std::atan2(sd - 2.0 * sa * sb / pd, sc - (sa * sa - sb * sb) / pd);
        max_angle = std::max(max_angle, std::abs(phi));
        if (std::abs(phi) < 1e-15) continue;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const Eigen::VectorXd bj = b.col(j);
        const Eigen::VectorXd bl = b.col(l);
        b.col(j) = c * bj + s * bl;
        b.col(l) = -s * bj + c * bl;
        const Eigen::VectorXd tj = t.col(j);
        const Eigen::VectorXd tl = t.col(l);
        t.col(j) = c * tj + s * tl;
        t.col(l) = -s * tj + c * tl;
      }
    }
    out.varimax_criterion.push_back(varimax_criterion(b));
    if (max_angle < options.tolerance) break;
  }

  Eigen::MatrixXd rotated = a * t;
  // order by explained variance, then sign so the dominant loading is positive
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Eigen::VectorXd ss = rotated.colwise().squaredNorm();
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return ss(x) > ss(y); });
  Eigen::MatrixXd sorted_l(p, k);
  Eigen::MatrixXd sorted_t(k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    sorted_l.col(c) = rotated.col(order[static_cast<std::size_t>(c)]);
    sorted_t.col(c) = t.col(order[static_cast<std::size_t>(c)]);
  }
  detail::fix_signs(sorted_l, &sorted_t);

  out.rotated = true;
  out.rotation = sorted_t;
  out.loadings = sorted_l;
  detail::label_components(out, "RC");
  return out;
}

}  // namespace satfake::stats
