#include <cmath>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/stats.hpp"

namespace satfake::stats {

StepwiseResult stepwise_backward(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 const std::vector<std::string>& names, double alpha, const LogisticOptions& options) {
  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < x.cols(); ++j) active.push_back(j);

  StepwiseResult result;
  while (true) {
    Eigen::MatrixXd sub(x.rows(), static_cast<Eigen::Index>(active.size()));
    std::vector<std::string> sub_names;
    for (std::size_t c = 0; c < active.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = x.col(active[c]);
      sub_names.push_back(names[static_cast<std::size_t>(active[c])]);
    }
    RegressionFit fit = fit_logistic(sub, y, sub_names, options);
    if (!fit.converged) {
      throw ConvergenceError(fmt::format("stepwise elimination: fit with {} predictors did not converge "
                                         "(gradient {:.3e}, {} iterations{})",
                                         active.size(), fit.gradient_norm, fit.iterations,
                                         fit.separation ? ", separation" : ""));
    }
    std::size_t worst = 0;
    for (std::size_t c = 1; c < fit.predictors.size(); ++c) {
      const auto& a = fit.predictors[c];
      const auto& b = fit.predictors[worst];
      if (a.p_value > b.p_value || (a.p_value == b.p_value && std::abs(a.z) < std::abs(b.z))) worst = c;
    }
    if (active.size() <= 1 || fit.predictors[worst].p_value <= alpha) {
      result.final_fit = std::move(fit);
      break;
    }
    const auto& w = fit.predictors[worst];
    result.removals.push_back({w.name, w.p_value, w.z});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  for (const auto& c : result.final_fit.predictors) result.survivors.push_back(c.name);
  return result;
}

}  // namespace satfake::stats
