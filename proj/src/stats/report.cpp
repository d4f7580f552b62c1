#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "satfake/stats.hpp"
#include "satfake/util/text.hpp"

namespace satfake::stats {

std::string stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

SignificanceTable significance_table(const RegressionFit& full, const StepwiseResult& stepwise,
                                     const std::vector<std::string>& labels) {
  SignificanceTable t;
  t.intercept = full.intercept;
  for (std::size_t i = 0; i < full.predictors.size(); ++i) {
    const auto& c = full.predictors[i];
    if (!(c.p_value < 0.05)) {
      ++t.omitted;
      continue;
    }
    TableRow r;
    r.component = c.name;
    r.label = i < labels.size() ? labels[i] : c.name;
    r.estimate = c.estimate;
    r.std_error = c.std_error;
    r.z = c.z;
    r.p_value = c.p_value;
    r.stars = stars(c.p_value);
    r.survivor = std::find(stepwise.survivors.begin(), stepwise.survivors.end(), c.name) != stepwise.survivors.end();
    (c.estimate > 0.0 ? t.satire : t.fake).push_back(std::move(r));
  }
  auto by_abs_z = [](const TableRow& a, const TableRow& b) { return std::abs(a.z) > std::abs(b.z); };
  std::stable_sort(t.satire.begin(), t.satire.end(), by_abs_z);
  std::stable_sort(t.fake.begin(), t.fake.end(), by_abs_z);
  return t;
}

std::string render_table_text(const SignificanceTable& t) {
  std::size_t label_w = std::string_view("Index").size();
  for (const auto* block : {&t.satire, &t.fake}) {
    for (const auto& r : *block) label_w = std::max(label_w, r.label.size() + 4);
  }
  std::string out;
  out += fmt::format("{:<22} {:<6} {:<{}} {:>9} {:>9} {:>9}  {}\n", "", "", "Index", label_w, "estimate", "std.error",
                     "statistic", "sig");
  auto block = [&](const char* title, const std::vector<TableRow>& rows) {
    bool first = true;
    for (const auto& r : rows) {
      const std::string comp = r.survivor ? "**" + r.component + "**" : r.component;
      const std::string label = r.survivor ? "**" + r.label + "**" : r.label;
      out += fmt::format("{:<22} {:<6} {:<{}} {:>9.2f} {:>9.2f} {:>9.2f}  {}\n", first ? title : "", comp, label,
                         label_w, r.estimate, r.std_error, r.z, r.stars);
      first = false;
    }
    if (rows.empty()) out += fmt::format("{:<22} (none)\n", title);
  };
  block("Satire associated", t.satire);
  block("Fake news associated", t.fake);
  out += fmt::format("{:<22} {:<6} {:<{}} {:>9.2f} {:>9.2f} {:>9.2f}  {}\n", "", "", "(Intercept)", label_w,
                     t.intercept.estimate, t.intercept.std_error, t.intercept.z, stars(t.intercept.p_value));
  out += fmt::format("\nStars: * p < 0.05, ** p < 0.01, *** p < 0.001. Bold (**...**): kept by stepwise backward "
                     "elimination. {} non-significant components omitted.\n",
                     t.omitted);
  return out;
}

std::string render_table_tsv(const SignificanceTable& t) {
  std::string out = "block\tcomponent\tlabel\testimate\tstd_error\tstatistic\tp_value\tstars\tstepwise_survivor\n";
  auto row = [&](const char* block, const TableRow& r) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", block, r.component, r.label,
                       util::format_double(r.estimate), util::format_double(r.std_error), util::format_double(r.z),
                       util::format_double(r.p_value), r.stars, r.survivor ? 1 : 0);
  };
  for (const auto& r : t.satire) row("satire", r);
  for (const auto& r : t.fake) row("fake", r);
  const auto& c = t.intercept;
  out += fmt::format("intercept\t(Intercept)\t(Intercept)\t{}\t{}\t{}\t{}\t{}\t\n", util::format_double(c.estimate),
                     util::format_double(c.std_error), util::format_double(c.z), util::format_double(c.p_value),
                     stars(c.p_value));
  return out;
}

std::string render_fit_tsv(const RegressionFit& fit) {
  std::string out = fmt::format("# satfake-logistic\t1\n# converged\t{}\n# separation\t{}\n# iterations\t{}\n"
                                "# log_likelihood\t{}\n# gradient_max_norm\t{}\n",
                                fit.converged ? 1 : 0, fit.separation ? 1 : 0, fit.iterations,
                                util::format_double(fit.log_likelihood), util::format_double(fit.gradient_norm));
  out += "name\testimate\tstd_error\tstatistic\tp_value\n";
  auto row = [&](const Coefficient& c) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", c.name, util::format_double(c.estimate), util::format_double(c.std_error),
                       util::format_double(c.z), util::format_double(c.p_value));
  };
  row(fit.intercept);
  for (const auto& c : fit.predictors) row(c);
  return out;
}

}  // namespace satfake::stats
