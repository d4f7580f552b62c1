#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "satfake/error.hpp"
#include "satfake/pipeline.hpp"
#include "satfake/util/rng.hpp"
#include "support.hpp"

using namespace satfake;
using namespace satfake::pipeline;

namespace {

// c0 drives the label, c1..c4 are correlated noise.
struct Labeled {
  FeatureMatrix m;
  std::vector<Label> labels;
};

Labeled labeled_matrix(std::uint64_t seed, int n) {
  Labeled out;
  out.m = test::random_matrix(seed, n, 5);
  util::Rng rng(seed + 1);
  for (int i = 0; i < n; ++i) {
    const double s = 1.5 * out.m.values(i, 0) + rng.normal();
    out.labels.push_back(s > 0 ? Label::Satire : Label::Fake);
  }
  return out;
}

std::vector<std::string> ids_of(const FeatureMatrix& m) { return m.row_ids; }

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("components, selection and determinism") {
    const auto d = labeled_matrix(17, 200);
    std::string diag;
    const auto a = run_analysis(d.m, d.labels, {}, nullptr, &diag);
    CHECK(a.scores.rows() == 200);
    CHECK(a.scores.cols() == a.model.retained());
    CHECK(a.model.rotated);
    CHECK(a.full.converged);
    CHECK(a.descriptions.size() == static_cast<std::size_t>(a.model.retained()));
    CHECK_FALSE(a.selected_indices.empty());
    for (const auto& s : a.selected_indices) {
      CHECK(std::find(d.m.column_names.begin(), d.m.column_names.end(), s) != d.m.column_names.end());
    }
    CHECK_FALSE(diag.empty());
    CHECK((a.table.satire.size() + a.table.fake.size()) > 0);

    std::string diag2;
    const auto b = run_analysis(d.m, d.labels, {}, nullptr, &diag2);
    CHECK(diag == diag2);
    CHECK(a.scores == b.scores);
    CHECK(a.selected_indices == b.selected_indices);
  }

  TEST_CASE("unrotated analysis uses principal components") {
    const auto d = labeled_matrix(5, 150);
    AnalysisOptions o;
    o.rotate = false;
    const auto a = run_analysis(d.m, d.labels, o);
    CHECK_FALSE(a.model.rotated);
    CHECK(a.model.component_names.front() == "PC1");
  }

  TEST_CASE("a perfectly separating feature is a convergence error") {
    auto d = labeled_matrix(9, 80);
    for (Eigen::Index i = 0; i < d.m.rows(); ++i) {
      d.m.values(i, 0) = d.labels[static_cast<std::size_t>(i)] == Label::Satire ? 5.0 + d.m.values(i, 1) * 0.01
                                                                                  : -5.0 + d.m.values(i, 2) * 0.01;
    }
    CHECK_THROWS_AS(run_analysis(d.m, d.labels, {}), ConvergenceError);
  }
}

TEST_SUITE("rows") {
  TEST_CASE("align and select") {
    const auto d = labeled_matrix(3, 40);
    auto plan = classify::make_folds(ids_of(d.m), d.labels, 4, 1);
    std::reverse(plan.ids.begin(), plan.ids.end());
    const auto rows = align_rows(d.m, plan);
    REQUIRE(rows.size() == 40);
    CHECK(rows.front() == 39);
    const auto s = select_rows(d.m, rows);
    CHECK(s.row_ids.front() == "r39");
    CHECK(s.values.row(0) == d.m.values.row(39));

    plan.ids[5] = "ghost";
    try {
      (void)align_rows(d.m, plan);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
  }
}

TEST_SUITE("cross-validation") {
  TEST_CASE("svm folds never see their own test rows") {
    const auto d = labeled_matrix(21, 160);
    const auto plan = classify::make_folds(ids_of(d.m), d.labels, 5, 4);
    SvmCvOptions o;
    std::vector<FoldLog> log;
    const auto preds = cross_validate_svm(d.m, plan, o, &log);
    REQUIRE(log.size() == 5);
    classify::validate_predictions(preds, plan);

    for (int f = 0; f < plan.k; ++f) {
      auto poisoned = d.m;
      for (std::size_t i = 0; i < plan.size(); ++i) {
        if (plan.folds[i] == f) poisoned.values.row(static_cast<Eigen::Index>(i)).setConstant(1e3 * (f + 1));
      }
      std::vector<FoldLog> log2;
      const auto p2 = cross_validate_svm(poisoned, plan, o, &log2);
      CHECK(log2[static_cast<std::size_t>(f)].columns == log[static_cast<std::size_t>(f)].columns);
      CHECK(log2[static_cast<std::size_t>(f)].objective == log[static_cast<std::size_t>(f)].objective);
    }
  }

  TEST_CASE("every feature variant predicts each article once") {
    const auto d = labeled_matrix(8, 120);
    const auto plan = classify::make_folds(ids_of(d.m), d.labels, 4, 2);
    for (const auto v : {SvmFeatures::Survivors, SvmFeatures::Raw, SvmFeatures::Scores}) {
      SvmCvOptions o;
      o.features = v;
      const auto p = cross_validate_svm(d.m, plan, o);
      classify::validate_predictions(p, plan);
      const auto again = cross_validate_svm(d.m, plan, o);
      CHECK(p == again);
      const auto r = classify::evaluate(p, plan, Label::Satire);
      CHECK(r.f1 > 0.6);
    }
    CHECK(parse_svm_features("scores") == SvmFeatures::Scores);
    CHECK(svm_features_name(SvmFeatures::Survivors) == "survivors");
    CHECK_FALSE(parse_svm_features("all"));
  }

  TEST_CASE("mnb cross-validation on the fixture corpus") {
    auto articles = corpus::ingest_directory(test::data_dir() / "raw").articles;
    const auto plan = classify::make_folds(articles, 5, 7);
    const auto p = cross_validate_mnb(articles, plan);
    classify::validate_predictions(p, plan);
    CHECK(p == cross_validate_mnb(articles, plan));
    std::set<std::string> methods;
    for (const auto& x : p) methods.insert(x.method);
    CHECK(methods == std::set<std::string>{"mnb"});
    std::reverse(articles.begin(), articles.end());
    CHECK(cross_validate_mnb(articles, plan) == p);
  }
}
