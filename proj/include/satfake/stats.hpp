#pragma once

// Standardization, principal components with varimax rotation, logistic
// regression with Wald tests, stepwise backward elimination and the
// significance table.

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "satfake/feature_matrix.hpp"

namespace satfake::stats {

// --- standardization -----------------------------------------------------------------

/// Column z-scores with the sample SD. Constant columns (SD below 1e-12 times
/// the column scale) are dropped and listed in standardization->dropped.
/// Throws ValidationError when n < 2 or a value is not finite.
FeatureMatrix standardize(const FeatureMatrix& matrix);

/// Applies stored parameters to the named columns of a raw matrix.
Eigen::MatrixXd apply_standardization(const FeatureMatrix& raw, const std::vector<std::string>& columns,
                                      const Standardization& params);

// --- symmetric eigendecomposition ------------------------------------------------------

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // unit columns
  int sweeps = 0;
  double off_diagonal = 0.0;  // Frobenius norm of the final off-diagonal part
};

/// Cyclic Jacobi rotations. Throws ConvergenceError (with the residual) when
/// the off-diagonal norm is still above tolerance after max_sweeps.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps = 100, double tolerance = 1e-15);

// --- principal components ------------------------------------------------------------------

struct PcaModel {
  std::vector<std::string> columns;  // input columns, in order
  Standardization standardization;   // parameters for columns
  Eigen::VectorXd eigenvalues;       // k retained, descending
  Eigen::MatrixXd eigenvectors;      // p x k, orthonormal columns

  bool rotated = false;
  Eigen::MatrixXd rotation;          // k x k orthogonal; identity when unrotated
  Eigen::MatrixXd loadings;          // p x k: eigenvectors, or V Lambda^1/2 T when rotated
  std::vector<std::string> component_names;   // PC1.. or RC1..
  std::vector<std::string> component_labels;  // column with the largest |loading|
  std::vector<double> varimax_criterion;      // one entry per sweep

  Eigen::Index retained() const { return eigenvalues.size(); }
};

/// Eigenvalues above 1e-8 are retained. Each component is signed so that its
/// largest-|loading| entry is positive. The input must be standardized.
PcaModel fit_pca(const FeatureMatrix& standardized);

/// Scaled loadings V Lambda^1/2, i.e. column-variable correlations.
Eigen::MatrixXd factor_loadings(const PcaModel& model);

struct VarimaxOptions {
  bool kaiser_normalize = true;
  int max_sweeps = 500;
  double tolerance = 1e-12;  // largest rotation angle in a sweep
};

/// Pairwise varimax on the scaled loadings. k = 1 leaves the model unchanged.
/// Components are reordered by explained variance and renamed RC1..RCk.
PcaModel varimax_rotate(const PcaModel& model, const VarimaxOptions& options = {});

/// Varimax criterion: sum over columns of the variance of squared loadings.
double varimax_criterion(const Eigen::MatrixXd& loadings);

/// Unrotated: Z V. Rotated (regression method): Z V Lambda^-1/2 T, which has
/// unit-variance uncorrelated columns. `raw` must contain every model column;
/// otherwise ValidationError lists the missing names.
Eigen::MatrixXd project_scores(const FeatureMatrix& raw, const PcaModel& model);
Eigen::MatrixXd project_standardized(const Eigen::MatrixXd& z, const PcaModel& model);

void write_pca_model(const PcaModel& model, const std::filesystem::path& path);
PcaModel read_pca_model(const std::filesystem::path& path);

// --- logistic regression --------------------------------------------------------------------------

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

struct RegressionFit {
  Coefficient intercept;
  std::vector<Coefficient> predictors;
  double log_likelihood = 0.0;
  double gradient_norm = 0.0;  // max-norm at the reported estimate
  bool converged = false;
  bool separation = false;     // Wald values unreliable
  int iterations = 0;
  std::vector<std::string> warnings;
};

struct LogisticOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double loglik_tolerance = 1e-10;
  double coefficient_cap = 30.0;  // |beta| above this while improving signals separation
};

/// Maximum likelihood by IRLS with step halving. X holds predictors only; an
/// intercept is added. y is 0/1 (Satire = 1). Stops when the gradient
/// max-norm or an accepted step's log-likelihood gain drops below tolerance.
RegressionFit fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>& names,
                           const LogisticOptions& options = {});

/// Two-sided normal p-value.
double normal_two_sided_p(double z);

// --- stepwise backward elimination ------------------------------------------------------------------

struct Removal {
  std::string name;
  double p_value = 0.0;
  double z = 0.0;
};

struct StepwiseResult {
  std::vector<Removal> removals;
  RegressionFit final_fit;
  std::vector<std::string> survivors;
};

/// Repeatedly drops the predictor with the largest p-value above alpha (ties:
/// smaller |z|, then earlier column) until all p <= alpha or one remains.
StepwiseResult stepwise_backward(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 const std::vector<std::string>& names, double alpha = 0.05,
                                 const LogisticOptions& options = {});

// --- significance table ---------------------------------------------------------------------------------

struct TableRow {
  std::string component;
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  std::string stars;
  bool survivor = false;
};

struct SignificanceTable {
  Coefficient intercept;
  std::vector<TableRow> satire;  // estimate > 0, |z| descending
  std::vector<TableRow> fake;    // estimate < 0, |z| descending
  std::size_t omitted = 0;       // rows with p >= 0.05
};

std::string stars(double p);

/// Significant rows of the full fit, split by sign. `labels[i]` describes
/// predictor i of the full fit.
SignificanceTable significance_table(const RegressionFit& full, const StepwiseResult& stepwise,
                                     const std::vector<std::string>& labels);

std::string render_table_text(const SignificanceTable& table);
std::string render_table_tsv(const SignificanceTable& table);
/// Every coefficient of a fit, one per line.
std::string render_fit_tsv(const RegressionFit& fit);

}  // namespace satfake::stats
