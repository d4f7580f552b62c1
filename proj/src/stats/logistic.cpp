#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/stats.hpp"

namespace satfake::stats {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = x * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - softplus(eta(i));
  return ll;
}

struct Derivatives {
  Eigen::VectorXd gradient;
  Eigen::MatrixXd information;
};

Derivatives derivatives(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = x * beta;
  Eigen::VectorXd mu(eta.size());
  Eigen::VectorXd w(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    mu(i) = sigmoid(eta(i));
    w(i) = mu(i) * (1.0 - mu(i));
  }
  return {x.transpose() * (y - mu), x.transpose() * w.asDiagonal() * x};
}

// Solves info * d = rhs, adding a small ridge if the matrix is not positive definite.
Eigen::MatrixXd solve_information(const Eigen::MatrixXd& info, const Eigen::MatrixXd& rhs, bool& ridged) {
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  ridged = true;
  const Eigen::MatrixXd ridge = info + 1e-8 * Eigen::MatrixXd::Identity(info.rows(), info.cols());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(ridge);
  return ldlt.solve(rhs);
}

}  // namespace

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

RegressionFit fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>& names,
                           const LogisticOptions& opt) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (y.size() != n) throw ValidationError("fit_logistic: label count does not match rows");
  if (static_cast<Eigen::Index>(names.size()) != k) throw ValidationError("fit_logistic: name count does not match columns");
  if (n <= k + 1) throw ValidationError(fmt::format("fit_logistic: need more rows ({}) than parameters ({})", n, k + 1));
  const double positives = y.sum();
  if (positives <= 0.0 || positives >= static_cast<double>(n)) {
    throw ValidationError("fit_logistic: both classes must be present");
  }
  if (!x.allFinite()) throw ValidationError("fit_logistic: non-finite predictor value");

  Eigen::MatrixXd xa(n, k + 1);
  xa.col(0).setOnes();
  xa.rightCols(k) = x;

  RegressionFit fit;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k + 1);
  double ll = log_likelihood(xa, y, beta);
  bool ridged = false;
  double last_change = std::numeric_limits<double>::infinity();
  double prev_grad = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    const auto d = derivatives(xa, y, beta);
    const double grad = d.gradient.cwiseAbs().maxCoeff();
    if (grad < opt.gradient_tolerance || (last_change < opt.loglik_tolerance && grad > 0.5 * prev_grad)) {
      fit.converged = true;
      break;
    }
    prev_grad = grad;
    const Eigen::VectorXd step = solve_information(d.information, d.gradient, ridged);
    double scale = 1.0;
    Eigen::VectorXd candidate = beta + step;
    double cand_ll = log_likelihood(xa, y, candidate);
    int halvings = 0;
    // below this the log-likelihood difference is rounding noise
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(ll));
    while (!(cand_ll >= ll - slack) && halvings < 50) {
      scale *= 0.5;
      candidate = beta + scale * step;
      cand_ll = log_likelihood(xa, y, candidate);
      ++halvings;
    }
    fit.iterations = it + 1;
    if (!(cand_ll >= ll - slack)) break;  // no ascent direction left
    const double change = cand_ll - ll;
    beta = candidate;
    ll = cand_ll;
    if (beta.cwiseAbs().maxCoeff() > opt.coefficient_cap && change > opt.loglik_tolerance) {
      fit.separation = true;
      fit.warnings.push_back(fmt::format("coefficient exceeded {} while the likelihood kept improving: "
                                         "probable separation, Wald statistics unreliable",
                                         opt.coefficient_cap));
      break;
    }
    last_change = change;
  }

  const auto d = derivatives(xa, y, beta);
  fit.gradient_norm = d.gradient.cwiseAbs().maxCoeff();
  if (!fit.separation && n > 0) {
    double worst = 0.0;
    const Eigen::VectorXd eta = xa * beta;
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(y(i) - sigmoid(eta(i))));
    if (worst < 1e-6) {
      fit.separation = true;
      fit.warnings.push_back("every observation is fitted almost exactly: complete separation, Wald statistics unreliable");
    }
  }
  if (!fit.converged && !fit.separation && fit.gradient_norm < opt.gradient_tolerance) fit.converged = true;
  if (fit.separation) fit.converged = false;
  const Eigen::MatrixXd cov =
      solve_information(d.information, Eigen::MatrixXd::Identity(k + 1, k + 1), ridged);
  if (ridged) fit.warnings.push_back("information matrix singular: ridge of 1e-8 added");
  const Eigen::VectorXd info_ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d.information, Eigen::EigenvaluesOnly)
                                      .eigenvalues();
  const double condition = info_ev.maxCoeff() / std::max(info_ev.minCoeff(), std::numeric_limits<double>::min());
  if (condition > 1e6) {
    fit.warnings.push_back(fmt::format("information matrix condition number {:.3g}: standard errors and Wald "
                                       "statistics are unreliable (quasi-separation)",
                                       condition));
  }
  fit.log_likelihood = ll;

  auto coefficient = [&](Eigen::Index j, std::string name) {
    Coefficient c;
    c.name = std::move(name);
    c.estimate = beta(j);
    c.std_error = std::sqrt(std::max(cov(j, j), 0.0));
    c.z = c.std_error > 0.0 ? c.estimate / c.std_error : 0.0;
    c.p_value = c.std_error > 0.0 ? normal_two_sided_p(c.z) : 1.0;
    return c;
  };
  fit.intercept = coefficient(0, "(Intercept)");
  for (Eigen::Index j = 0; j < k; ++j) fit.predictors.push_back(coefficient(j + 1, names[static_cast<std::size_t>(j)]));
  return fit;
}

}  // namespace satfake::stats
