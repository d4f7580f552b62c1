#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::classify {

TTest paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("paired_ttest: samples differ in length");
  if (a.size() < 2) throw ValidationError("paired_ttest: need at least two pairs");
  const double n = static_cast<double>(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += std::pow(a[i] - b[i] - mean, 2);
  const double sd = std::sqrt(ss / (n - 1.0));

  TTest r;
  r.df = static_cast<int>(a.size()) - 1;
  if (sd == 0.0) {
    if (mean == 0.0) return r;  // t = 0, p = 1
    r.degenerate = true;
    r.t = mean > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  r.t = mean / (sd / std::sqrt(n));
  const boost::math::students_t dist(static_cast<double>(r.df));
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

TTest paired_ttest(const EvalReport& a, const EvalReport& b) {
  if (a.folds.size() != b.folds.size()) throw ValidationError("paired_ttest: reports have different fold counts");
  std::vector<double> fa, fb;
  for (std::size_t i = 0; i < a.folds.size(); ++i) {
    if (a.folds[i].fold != b.folds[i].fold) throw ValidationError("paired_ttest: reports are not fold-aligned");
    fa.push_back(a.folds[i].f1);
    fb.push_back(b.folds[i].f1);
  }
  return paired_ttest(fa, fb);
}

Comparison compare_methods(const std::vector<EvalReport>& reports, const std::string& baseline) {
  if (reports.size() < 2) throw ValidationError("compare_methods needs at least two reports");
  const EvalReport* base = nullptr;
  for (const auto& r : reports) {
    if (r.method == baseline) base = &r;
  }
  if (!base) throw ValidationError(fmt::format("baseline method '{}' not among the reports", baseline));
  for (const auto& r : reports) {
    if (r.positive != base->positive) throw ValidationError("reports use different positive classes");
    bool aligned = r.folds.size() == base->folds.size();
    for (std::size_t i = 0; aligned && i < r.folds.size(); ++i) aligned = r.folds[i].fold == base->folds[i].fold;
    if (!aligned) throw ValidationError(fmt::format("report '{}' is not fold-aligned with '{}'", r.method, baseline));
  }

  Comparison c;
  c.baseline = baseline;
  c.positive = base->positive;
  std::size_t best = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    ComparisonRow row;
    row.method = r.method;
    row.precision = r.precision;
    row.recall = r.recall;
    row.f1 = r.f1;
    row.macro_f1 = r.macro_f1;
    if (&r != base) {
      row.test = paired_ttest(r, *base);
      row.star = row.test.p < 0.05;
    } else {
      row.test.df = static_cast<int>(r.folds.size()) - 1;
    }
    if (r.f1 > reports[best].f1) best = i;
    c.rows.push_back(std::move(row));
  }
  c.rows[best].best = true;
  return c;
}

std::string render_comparison_text(const Comparison& c) {
  std::string out = fmt::format("Positive class: {}. Baseline: {}.\n\n", corpus::label_name(c.positive), c.baseline);
  out += fmt::format("{:<16} {:>9} {:>9} {:>10} {:>9} {:>8} {:>8}\n", "Method", "Precision", "Recall", "F1", "macro-F1",
                     "t", "p");
  for (const auto& r : c.rows) {
    std::string f1 = fmt::format("{:.2f}{}", r.f1, r.star ? "*" : "");
    if (r.best) f1 = "**" + f1 + "**";
    const bool base = r.method == c.baseline;
    out += fmt::format("{:<16} {:>9.2f} {:>9.2f} {:>10} {:>9.2f} {:>8} {:>8}\n", r.method, r.precision, r.recall, f1,
                       r.macro_f1, base ? "-" : fmt::format("{:.2f}", r.test.t),
                       base ? "-" : fmt::format("{:.4f}", r.test.p));
  }
  out += "\n* paired two-tailed t-test on per-fold F1 against the baseline, p < 0.05. Bold: best mean F1.\n";
  return out;
}

std::string render_comparison_tsv(const Comparison& c) {
  std::string out = "method\tprecision\trecall\tf1\tmacro_f1\tt\tp\tdf\tstar\tbest\n";
  for (const auto& r : c.rows) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.method, util::format_double(r.precision),
                       util::format_double(r.recall), util::format_double(r.f1), util::format_double(r.macro_f1),
                       util::format_double(r.test.t), util::format_double(r.test.p), r.test.df, r.star ? 1 : 0,
                       r.best ? 1 : 0);
  }
  return out;
}

}  // namespace satfake::classify
