#pragma once

// Stratified folds, the shared prediction-file contract, multinomial naive
// Bayes, a linear SVM, fold-wise metrics and the paired t-test comparison.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "satfake/corpus.hpp"

namespace satfake::classify {

using corpus::Label;

// --- folds ---------------------------------------------------------------------------

struct SplitPlan {
  int k = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> ids;  // corpus order
  std::vector<Label> labels;
  std::vector<int> folds;        // 0-based fold of ids[i]

  /// Fold of an id, or -1.
  int fold_of(const std::string& id) const;
  std::size_t size() const { return ids.size(); }
};

/// Each class is shuffled with the seed and dealt round-robin over the folds;
/// the second class continues where the first stopped, so fold sizes differ
/// by at most one. Throws ValidationError when a class has fewer than k
/// articles or k < 2.
SplitPlan make_folds(const std::vector<corpus::Article>& articles, int k, std::uint64_t seed);
SplitPlan make_folds(const std::vector<std::string>& ids, const std::vector<Label>& labels, int k, std::uint64_t seed);

/// Tab-separated: "# satfake-splitplan 1", "# k N", "# seed S", then
/// "articleId<TAB>label<TAB>fold" rows.
std::string serialize_split_plan(const SplitPlan& plan);
SplitPlan parse_split_plan(std::string_view data);
void write_split_plan(const SplitPlan& plan, const std::filesystem::path& path);
SplitPlan read_split_plan(const std::filesystem::path& path);

// --- predictions -------------------------------------------------------------------------

struct Prediction {
  std::string article_id;
  int fold = 0;
  Label true_label = Label::Fake;
  Label predicted = Label::Fake;
  double score = 0.0;  // higher = more satire-like
  std::string method;

  bool operator==(const Prediction&) const = default;
};

/// One JSON object per line, keys in the order articleId, fold, trueLabel,
/// predictedLabel, score, method.
std::string serialize_predictions(const std::vector<Prediction>& predictions);
std::vector<Prediction> parse_predictions(std::string_view data);
void write_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& path);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

/// Checks a prediction set against the plan: one method, every plan id
/// exactly once, matching folds and gold labels, and labels consistent with a
/// single score threshold. Throws ValidationError listing offending ids.
void validate_predictions(const std::vector<Prediction>& predictions, const SplitPlan& plan);

// --- multinomial naive Bayes ------------------------------------------------------------

/// Lowercased word tokens; punctuation dropped.
std::vector<std::string> bag_of_words(std::string_view text);

struct MnbModel {
  std::vector<std::string> vocabulary;  // sorted
  std::unordered_map<std::string, std::size_t> index;
  double log_prior[2] = {0.0, 0.0};            // [Fake, Satire]
  std::vector<double> log_likelihood[2];       // per vocabulary entry
  double alpha = 1.0;
};

MnbModel train_mnb(const std::vector<std::vector<std::string>>& documents, const std::vector<Label>& labels,
                   double alpha = 1.0);

struct MnbPosterior {
  double log_joint[2] = {0.0, 0.0};
  double log_posterior[2] = {0.0, 0.0};
  double p_satire = 0.0;
  Label label = Label::Fake;
};

/// Unseen words are ignored. Ties go to the class with the larger prior,
/// then Fake.
MnbPosterior mnb_posterior(const MnbModel& model, const std::vector<std::string>& tokens);

// --- linear SVM ----------------------------------------------------------------------------

struct SvmOptions {
  double lambda = 1e-3;
  int epochs = 200;
  std::uint64_t seed = 1;
  double initial_step = 0.1;
};

struct SvmModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  SvmOptions options;
  std::vector<double> objective;  // accepted objective after each epoch, starting at the initial point
};

/// lambda/2 |w|^2 + mean hinge(y (w.x + b)). Labels are +1 (Satire) / -1 (Fake).
double svm_objective(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& w, double b,
                     double lambda);

/// Seeded stochastic subgradient descent. Each epoch is one shuffled pass;
/// the epoch's averaged iterate is accepted only if it does not increase the
/// objective, otherwise the step size is halved and the epoch retried.
SvmModel train_svm(const Eigen::MatrixXd& x, const std::vector<int>& y, const SvmOptions& options);

double svm_margin(const SvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& row);

/// Column scaling fitted on training rows only (sample SD; constant columns map to 0).
struct Scaler {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;

  static Scaler fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
};

// --- evaluation ------------------------------------------------------------------------------

struct FoldMetrics {
  int fold = 0;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double macro_f1 = 0.0;
  bool undefined = false;  // some ratio had a zero denominator and was set to 0
};

struct EvalReport {
  std::string method;
  Label positive = Label::Fake;
  std::vector<FoldMetrics> folds;
  double precision = 0.0;  // means over folds
  double recall = 0.0;
  double f1 = 0.0;
  double macro_f1 = 0.0;
};

/// Fold-wise precision, recall and F1 for the positive class.
EvalReport evaluate(const std::vector<Prediction>& predictions, const SplitPlan& plan, Label positive);

std::string render_report_tsv(const EvalReport& report);

struct TTest {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  bool degenerate = false;  // zero-variance differences with nonzero mean
};

/// Classic paired t-test on a[i] - b[i], two-sided p from Student's t.
TTest paired_ttest(std::span<const double> a, std::span<const double> b);
TTest paired_ttest(const EvalReport& a, const EvalReport& b);

struct ComparisonRow {
  std::string method;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double macro_f1 = 0.0;
  TTest test;          // against the baseline; t = 0, p = 1 for the baseline row
  bool star = false;   // p < 0.05 against the baseline
  bool best = false;   // highest mean F1
};

struct Comparison {
  std::string baseline;
  Label positive = Label::Fake;
  std::vector<ComparisonRow> rows;
};

/// Throws ValidationError when reports are not fold-aligned, fewer than two
/// are given, or the baseline is missing.
Comparison compare_methods(const std::vector<EvalReport>& reports, const std::string& baseline);

std::string render_comparison_text(const Comparison& c);
std::string render_comparison_tsv(const Comparison& c);

}  // namespace satfake::classify
