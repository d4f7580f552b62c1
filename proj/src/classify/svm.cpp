#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/util/rng.hpp"

namespace satfake::classify {

double svm_objective(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& w, double b,
                     double lambda) {
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = y[static_cast<std::size_t>(i)] * (x.row(i).dot(w) + b);
    hinge += std::max(0.0, 1.0 - m);
  }
  return 0.5 * lambda * w.squaredNorm() + hinge / static_cast<double>(x.rows());
}

SvmModel train_svm(const Eigen::MatrixXd& x, const std::vector<int>& y, const SvmOptions& opt) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (static_cast<Eigen::Index>(y.size()) != n) throw ValidationError("train_svm: label count does not match rows");
  if (n == 0) throw ValidationError("train_svm: no training rows");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (!std::isfinite(x(i, j))) throw ValidationError(fmt::format("train_svm: non-finite value at row {}, column {}", i, j));
    }
  }
  bool pos = false;
  bool neg = false;
  for (const int v : y) {
    if (v != 1 && v != -1) throw ValidationError("train_svm: labels must be +1 or -1");
    (v > 0 ? pos : neg) = true;
  }
  if (!pos || !neg) throw ValidationError("train_svm: both classes must be present");

  SvmModel m;
  m.options = opt;
  m.weights = Eigen::VectorXd::Zero(p);
  double current = svm_objective(x, y, m.weights, m.bias, opt.lambda);
  m.objective.push_back(current);

  util::Rng rng(opt.seed);
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  double eta0 = opt.initial_step;
  double steps = 0.0;
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    for (int attempt = 0; attempt < 30; ++attempt) {
      rng.shuffle(std::span<std::size_t>(order));
      Eigen::VectorXd w = m.weights;
      double b = m.bias;
      Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(p);
      double b_sum = 0.0;
      double t = steps;
      for (const std::size_t i : order) {
        const auto row = x.row(static_cast<Eigen::Index>(i));
        const double yi = y[i];
        const double eta = eta0 / (1.0 + eta0 * opt.lambda * t);
        const double margin = yi * (row.dot(w) + b);
        w *= 1.0 - eta * opt.lambda;
        if (margin < 1.0) {
          w += eta * yi * row.transpose();
          b += eta * yi;
        }
        w_sum += w;
        b_sum += b;
        t += 1.0;
      }
      const Eigen::VectorXd w_avg = w_sum / static_cast<double>(n);
      const double b_avg = b_sum / static_cast<double>(n);
      const double obj = svm_objective(x, y, w_avg, b_avg, opt.lambda);
      if (obj <= current) {
        m.weights = w_avg;
        m.bias = b_avg;
        current = obj;
        steps = t;
        break;
      }
      eta0 *= 0.5;
    }
    m.objective.push_back(current);
  }
  return m;
}

double svm_margin(const SvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& row) {
  return model.weights.dot(row) + model.bias;
}

Scaler Scaler::fit(const Eigen::MatrixXd& x) {
  Scaler s;
  const Eigen::Index n = x.rows();
  s.mean = x.colwise().mean().transpose();
  s.sd = Eigen::VectorXd::Zero(x.cols());
  if (n < 2) return s;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double sd = std::sqrt((x.col(j).array() - s.mean(j)).square().sum() / static_cast<double>(n - 1));
    const double scale = std::max(1.0, x.col(j).cwiseAbs().maxCoeff());
    s.sd(j) = sd > 1e-12 * scale ? sd : 0.0;
  }
  return s;
}

Eigen::MatrixXd Scaler::transform(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd z(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (sd(j) > 0.0) {
      z.col(j) = (x.col(j).array() - mean(j)) / sd(j);
    } else {
      z.col(j).setZero();
    }
  }
  return z;
}

}  // namespace satfake::classify
