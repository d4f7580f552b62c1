#pragma once

// The study pipeline shared by the command-line front end and the acceptance
// suite: component analysis of a feature table and cross-validated
// prediction for the two classifiers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "satfake/classify.hpp"
#include "satfake/corpus.hpp"
#include "satfake/feature_matrix.hpp"
#include "satfake/features.hpp"
#include "satfake/stats.hpp"

namespace satfake::pipeline {

using corpus::Label;

struct AnalysisOptions {
  double alpha = 0.05;
  bool rotate = true;
  bool kaiser = true;
  stats::LogisticOptions logistic;
};

struct Analysis {
  FeatureMatrix standardized;
  stats::PcaModel model;
  Eigen::MatrixXd scores;
  stats::RegressionFit full;
  stats::StepwiseResult stepwise;
  std::vector<std::string> descriptions;  // per component, from its dominant index
  stats::SignificanceTable table;
  /// Dominant index of every component significant in the full fit that also
  /// survives elimination, in column order.
  std::vector<std::string> selected_indices;
};

/// standardize, PCA, optional varimax, regression scores, logistic fit on
/// Satire = 1, stepwise elimination and the significance table. Progress is
/// appended to `diagnostics` as it happens, so a failure leaves a partial
/// log. Throws ConvergenceError when the full fit does not converge.
Analysis run_analysis(const FeatureMatrix& raw, const std::vector<Label>& labels, const AnalysisOptions& options,
                      const features::IndexCatalog* catalog = nullptr, std::string* diagnostics = nullptr);

struct ReferenceDirection {
  std::string index;
  int sign = 1;  // +1 satire-associated, -1 fake-associated
};

/// Indices of the published stepwise survivors that have a catalog analog,
/// with the direction of their association.
const std::vector<ReferenceDirection>& reference_directions();

struct DirectionCheck {
  bool first_person_positive = false;
  bool passive_negative = false;
  int agreeing = 0;  // reference survivors with a significant row of the same sign
  int compared = 0;
  std::vector<std::string> notices;
  std::string report;
};

/// Compares the significant rows of a table against the reference directions.
/// A notice is raised for each of the two headline indices that has no
/// significant row.
DirectionCheck check_directions(const stats::SignificanceTable& table);

/// Rows of `matrix` in the given order.
FeatureMatrix select_rows(const FeatureMatrix& matrix, const std::vector<std::size_t>& rows);

/// Row index of every plan id; ValidationError lists the ids without a row.
std::vector<std::size_t> align_rows(const FeatureMatrix& matrix, const classify::SplitPlan& plan);

std::vector<classify::Prediction> cross_validate_mnb(const std::vector<corpus::Article>& articles,
                                                     const classify::SplitPlan& plan,
                                                     const std::string& method = "mnb");

enum class SvmFeatures { Survivors, Raw, Scores };

std::string_view svm_features_name(SvmFeatures f);
std::optional<SvmFeatures> parse_svm_features(std::string_view name);

struct SvmCvOptions {
  SvmFeatures features = SvmFeatures::Survivors;
  classify::SvmOptions svm;
  AnalysisOptions analysis;
  std::string method = "svm-coh";
};

struct FoldLog {
  int fold = 0;
  std::vector<std::string> columns;  // SVM input columns
  std::vector<std::string> warnings;
  double objective = 0.0;            // final training objective
};

/// Every preprocessing step is fitted on the training folds only. Score is
/// the signed margin, Satire when positive.
std::vector<classify::Prediction> cross_validate_svm(const FeatureMatrix& raw, const classify::SplitPlan& plan,
                                                     const SvmCvOptions& options, std::vector<FoldLog>* log = nullptr);

}  // namespace satfake::pipeline
