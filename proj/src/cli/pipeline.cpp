#include "satfake/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::pipeline {

namespace {

void note(std::string* log, const std::string& line) {
  if (log) {
    *log += line;
    *log += '\n';
  }
}

Eigen::VectorXd satire_indicator(const std::vector<Label>& labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i)) = labels[i] == Label::Satire ? 1.0 : 0.0;
  return y;
}

FeatureMatrix select_columns(const FeatureMatrix& m, const std::vector<std::string>& names) {
  FeatureMatrix out;
  out.row_ids = m.row_ids;
  out.column_names = names;
  out.values.resize(m.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    const Eigen::Index c = m.column(names[j]);
    if (c < 0) throw ValidationError(fmt::format("feature table has no column '{}'", names[j]));
    out.values.col(static_cast<Eigen::Index>(j)) = m.values.col(c);
  }
  return out;
}

}  // namespace

FeatureMatrix select_rows(const FeatureMatrix& m, const std::vector<std::size_t>& rows) {
  FeatureMatrix out;
  out.column_names = m.column_names;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), m.cols());
  const bool has_flags = m.flags.rows() == m.rows() && m.flags.cols() == m.cols();
  if (has_flags) out.flags.resize(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(rows[i]);
    out.row_ids.push_back(m.row_ids[rows[i]]);
    out.values.row(static_cast<Eigen::Index>(i)) = m.values.row(r);
    if (has_flags) out.flags.row(static_cast<Eigen::Index>(i)) = m.flags.row(r);
  }
  return out;
}

std::vector<std::size_t> align_rows(const FeatureMatrix& m, const classify::SplitPlan& plan) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < m.row_ids.size(); ++i) index.emplace(m.row_ids[i], i);
  std::vector<std::size_t> rows;
  std::vector<std::string> missing;
  for (const auto& id : plan.ids) {
    const auto it = index.find(id);
    if (it == index.end()) {
      missing.push_back(id);
    } else {
      rows.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
    throw ValidationError(fmt::format("feature table lacks {} article(s): {}", missing.size(),
                                      fmt::join(missing.begin(), missing.begin() + static_cast<std::ptrdiff_t>(shown), ", ")));
  }
  return rows;
}

Analysis run_analysis(const FeatureMatrix& raw, const std::vector<Label>& labels, const AnalysisOptions& opt,
                      const features::IndexCatalog* catalog, std::string* log) {
  if (static_cast<Eigen::Index>(labels.size()) != raw.rows()) {
    throw ValidationError("run_analysis: label count does not match feature rows");
  }
  Analysis a;
  a.standardized = stats::standardize(raw);
  note(log, fmt::format("standardized {} rows x {} columns", a.standardized.rows(), a.standardized.cols()));
  for (const auto& d : a.standardized.standardization->dropped) note(log, fmt::format("dropped constant column {}", d));

  a.model = stats::fit_pca(a.standardized);
  note(log, fmt::format("pca: {} components retained of {}", a.model.retained(), a.standardized.cols()));
  std::vector<std::string> ev;
  for (Eigen::Index i = 0; i < a.model.eigenvalues.size(); ++i) ev.push_back(fmt::format("{:.6f}", a.model.eigenvalues(i)));
  note(log, fmt::format("eigenvalues: {}", fmt::join(ev, " ")));
  if (opt.rotate) {
    stats::VarimaxOptions vo;
    vo.kaiser_normalize = opt.kaiser;
    a.model = stats::varimax_rotate(a.model, vo);
    note(log, fmt::format("varimax: {} sweeps, criterion {}", a.model.varimax_criterion.size(),
                          a.model.varimax_criterion.empty() ? 0.0 : a.model.varimax_criterion.back()));
  }
  a.scores = stats::project_standardized(a.standardized.values, a.model);

  for (std::size_t j = 0; j < a.model.component_labels.size(); ++j) {
    const auto& name = a.model.component_labels[j];
    const auto* d = catalog ? catalog->find(name) : nullptr;
    a.descriptions.push_back(d ? d->description : name);
  }

  const Eigen::VectorXd y = satire_indicator(labels);
  a.full = stats::fit_logistic(a.scores, y, a.model.component_names, opt.logistic);
  note(log, fmt::format("full fit: {} iterations, log-likelihood {}, gradient max-norm {:.3e}, converged {}",
                        a.full.iterations, a.full.log_likelihood, a.full.gradient_norm, a.full.converged));
  for (const auto& w : a.full.warnings) note(log, "warning: " + w);
  if (!a.full.converged) {
    throw ConvergenceError(fmt::format("logistic regression on {} components did not converge{}", a.scores.cols(),
                                       a.full.separation ? " (separation detected)" : ""));
  }

  a.stepwise = stats::stepwise_backward(a.scores, y, a.model.component_names, opt.alpha, opt.logistic);
  for (const auto& r : a.stepwise.removals) note(log, fmt::format("removed {} (p = {:.6g})", r.name, r.p_value));
  note(log, fmt::format("survivors: {}", fmt::join(a.stepwise.survivors, " ")));

  a.table = stats::significance_table(a.full, a.stepwise, a.descriptions);

  std::vector<Eigen::Index> chosen;
  for (std::size_t j = 0; j < a.full.predictors.size(); ++j) {
    const auto& c = a.full.predictors[j];
    if (!(c.p_value < opt.alpha)) continue;
    if (std::find(a.stepwise.survivors.begin(), a.stepwise.survivors.end(), c.name) == a.stepwise.survivors.end()) continue;
    const Eigen::Index col = raw.column(a.model.component_labels[j]);
    if (col >= 0 && std::find(chosen.begin(), chosen.end(), col) == chosen.end()) chosen.push_back(col);
  }
  std::sort(chosen.begin(), chosen.end());
  for (const auto c : chosen) a.selected_indices.push_back(raw.column_names[static_cast<std::size_t>(c)]);
  note(log, fmt::format("selected indices: {}", fmt::join(a.selected_indices, " ")));
  return a;
}

const std::vector<ReferenceDirection>& reference_directions() {
  static const std::vector<ReferenceDirection> refs = {
      {"first_person_singular_incidence", 1},
      {"mean_sentence_length", 1},
      {"hypernymy_nouns", 1},
      {"concreteness", 1},
      {"causal_particle_verb_ratio", 1},
      {"pc_referential_cohesion", 1},
      {"gerund_incidence", 1},
      {"third_person_singular_incidence", 1},
      {"l2_readability", 1},
      {"word_freq_all", 1},
      {"agentless_passive_density", -1},
      {"word_freq_content", -1},
      {"adverb_incidence", -1},
      {"sentence_count", -1},
      {"lsa_verbs", -1},
      {"lsa_adjacent", -1},
  };
  return refs;
}

DirectionCheck check_directions(const stats::SignificanceTable& table) {
  DirectionCheck out;
  std::string report = "index\texpected\tcomponent\testimate\tagrees\n";
  for (const auto& ref : reference_directions()) {
    const stats::TableRow* best = nullptr;
    for (const auto* block : {&table.satire, &table.fake}) {
      for (const auto& r : *block) {
        if (r.label == ref.index && (!best || std::abs(r.z) > std::abs(best->z))) best = &r;
      }
    }
    ++out.compared;
    const bool agrees = best && (best->estimate > 0.0 ? 1 : -1) == ref.sign;
    if (agrees) ++out.agreeing;
    report += fmt::format("{}\t{}\t{}\t{}\t{}\n", ref.index, ref.sign > 0 ? "satire" : "fake",
                          best ? best->component : "-", best ? util::format_double(best->estimate) : "NA",
                          agrees ? "yes" : "no");
  }
  for (const auto& r : table.satire) out.first_person_positive |= r.label == "first_person_singular_incidence";
  for (const auto& r : table.fake) out.passive_negative |= r.label == "agentless_passive_density";
  if (!out.first_person_positive) {
    out.notices.push_back(
        "deviation: no significant satire-associated component is dominated by first_person_singular_incidence");
  }
  if (!out.passive_negative) {
    out.notices.push_back(
        "deviation: no significant fake-associated component is dominated by agentless_passive_density");
  }
  report += fmt::format("# agreeing {} of {}\n", out.agreeing, out.compared);
  for (const auto& n : out.notices) report += "# " + n + "\n";
  out.report = std::move(report);
  return out;
}

std::vector<classify::Prediction> cross_validate_mnb(const std::vector<corpus::Article>& articles,
                                                     const classify::SplitPlan& plan, const std::string& method) {
  std::unordered_map<std::string, const corpus::Article*> by_id;
  for (const auto& a : articles) by_id.emplace(a.id, &a);
  std::vector<std::vector<std::string>> docs;
  docs.reserve(plan.size());
  for (const auto& id : plan.ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw ValidationError(fmt::format("split plan id '{}' is not in the corpus", id));
    docs.push_back(classify::bag_of_words(corpus::full_text(*it->second)));
  }

  std::vector<classify::Prediction> out(plan.size());
  for (int f = 0; f < plan.k; ++f) {
    std::vector<std::vector<std::string>> train;
    std::vector<Label> train_labels;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (plan.folds[i] == f) continue;
      train.push_back(docs[i]);
      train_labels.push_back(plan.labels[i]);
    }
    const auto model = classify::train_mnb(train, train_labels, 1.0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (plan.folds[i] != f) continue;
      const auto post = classify::mnb_posterior(model, docs[i]);
      out[i] = {plan.ids[i], f, plan.labels[i], post.label, post.p_satire, method};
    }
  }
  return out;
}

std::string_view svm_features_name(SvmFeatures f) {
  switch (f) {
    case SvmFeatures::Survivors: return "survivors";
    case SvmFeatures::Raw: return "raw";
    case SvmFeatures::Scores: return "scores";
  }
  return "survivors";
}

std::optional<SvmFeatures> parse_svm_features(std::string_view name) {
  for (const auto f : {SvmFeatures::Survivors, SvmFeatures::Raw, SvmFeatures::Scores}) {
    if (name == svm_features_name(f)) return f;
  }
  return std::nullopt;
}

std::vector<classify::Prediction> cross_validate_svm(const FeatureMatrix& raw_in, const classify::SplitPlan& plan,
                                                     const SvmCvOptions& opt, std::vector<FoldLog>* log) {
  const FeatureMatrix raw = select_rows(raw_in, align_rows(raw_in, plan));
  std::vector<classify::Prediction> out(plan.size());
  for (int f = 0; f < plan.k; ++f) {
    FoldLog fl;
    fl.fold = f;
    std::vector<std::size_t> train_rows, test_rows;
    std::vector<Label> train_labels;
    std::vector<int> y;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (plan.folds[i] == f) {
        test_rows.push_back(i);
      } else {
        train_rows.push_back(i);
        train_labels.push_back(plan.labels[i]);
        y.push_back(plan.labels[i] == Label::Satire ? 1 : -1);
      }
    }
    const FeatureMatrix train = select_rows(raw, train_rows);
    const FeatureMatrix test = select_rows(raw, test_rows);

    Eigen::MatrixXd x_train, x_test;
    if (opt.features == SvmFeatures::Scores) {
      const FeatureMatrix z = stats::standardize(train);
      auto model = stats::fit_pca(z);
      if (opt.analysis.rotate) {
        stats::VarimaxOptions vo;
        vo.kaiser_normalize = opt.analysis.kaiser;
        model = stats::varimax_rotate(model, vo);
      }
      x_train = stats::project_standardized(z.values, model);
      x_test = stats::project_scores(test, model);
      fl.columns = model.component_names;
    } else {
      std::vector<std::string> columns = raw.column_names;
      if (opt.features == SvmFeatures::Survivors) {
        try {
          const auto a = run_analysis(train, train_labels, opt.analysis);
          if (a.selected_indices.empty()) {
            fl.warnings.push_back("no index survived selection; using every index");
          } else {
            columns = a.selected_indices;
          }
        } catch (const Error& e) {
          fl.warnings.push_back(fmt::format("index selection failed ({}); using every index", e.what()));
        }
      }
      const FeatureMatrix tr = select_columns(train, columns);
      const FeatureMatrix te = select_columns(test, columns);
      const auto scaler = classify::Scaler::fit(tr.values);
      x_train = scaler.transform(tr.values);
      x_test = scaler.transform(te.values);
      fl.columns = columns;
    }
    if (opt.features == SvmFeatures::Scores) {
      const auto scaler = classify::Scaler::fit(x_train);
      x_train = scaler.transform(x_train);
      x_test = scaler.transform(x_test);
    }

    const auto model = classify::train_svm(x_train, y, opt.svm);
    fl.objective = model.objective.back();
    for (std::size_t t = 0; t < test_rows.size(); ++t) {
      const std::size_t i = test_rows[t];
      const double margin = classify::svm_margin(model, x_test.row(static_cast<Eigen::Index>(t)).transpose());
      out[i] = {plan.ids[i], f, plan.labels[i], margin > 0.0 ? Label::Satire : Label::Fake, margin, opt.method};
    }
    if (log) log->push_back(std::move(fl));
  }
  return out;
}

}  // namespace satfake::pipeline
