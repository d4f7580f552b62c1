#include <fmt/format.h>

#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::classify {

namespace {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool undefined = false;
};

Prf prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf r;
  if (tp + fp > 0) {
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    r.undefined = true;
  }
  if (tp + fn > 0) {
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    r.undefined = true;
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.undefined = true;
  }
  return r;
}

}  // namespace

EvalReport evaluate(const std::vector<Prediction>& predictions, const SplitPlan& plan, Label positive) {
  validate_predictions(predictions, plan);
  EvalReport report;
  report.method = predictions.front().method;
  report.positive = positive;
  report.folds.resize(static_cast<std::size_t>(plan.k));
  for (int f = 0; f < plan.k; ++f) report.folds[static_cast<std::size_t>(f)].fold = f;
  for (const auto& p : predictions) {
    auto& m = report.folds[static_cast<std::size_t>(p.fold)];
    const bool truth = p.true_label == positive;
    const bool guess = p.predicted == positive;
    if (truth && guess) ++m.tp;
    if (!truth && guess) ++m.fp;
    if (truth && !guess) ++m.fn;
    if (!truth && !guess) ++m.tn;
  }
  for (auto& m : report.folds) {
    const Prf pos = prf(m.tp, m.fp, m.fn);
    const Prf neg = prf(m.tn, m.fn, m.fp);
    m.precision = pos.precision;
    m.recall = pos.recall;
    m.f1 = pos.f1;
    m.macro_f1 = 0.5 * (pos.f1 + neg.f1);
    m.undefined = pos.undefined || neg.undefined;
    report.precision += m.precision;
    report.recall += m.recall;
    report.f1 += m.f1;
    report.macro_f1 += m.macro_f1;
  }
  const double k = static_cast<double>(plan.k);
  report.precision /= k;
  report.recall /= k;
  report.f1 /= k;
  report.macro_f1 /= k;
  return report;
}

std::string render_report_tsv(const EvalReport& r) {
  std::string out = fmt::format("# method\t{}\n# positive_class\t{}\n", r.method, corpus::label_name(r.positive));
  out += "fold\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\tmacro_f1\tundefined\n";
  for (const auto& m : r.folds) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", m.fold, m.tp, m.fp, m.fn, m.tn,
                       util::format_double(m.precision), util::format_double(m.recall), util::format_double(m.f1),
                       util::format_double(m.macro_f1), m.undefined ? 1 : 0);
  }
  out += fmt::format("mean\t\t\t\t\t{}\t{}\t{}\t{}\t\n", util::format_double(r.precision), util::format_double(r.recall),
                     util::format_double(r.f1), util::format_double(r.macro_f1));
  return out;
}

}  // namespace satfake::classify
