#include "oracles.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "satfake/features.hpp"
#include "satfake/stats.hpp"
#include "satfake/util/rng.hpp"
#include "satfake/util/text.hpp"
#include "support.hpp"

namespace satfake::test {

namespace fs = std::filesystem;
using corpus::Label;

FeatureMatrix random_matrix(std::uint64_t seed, int n, int p) {
  util::Rng rng(seed);
  Eigen::MatrixXd g(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) g(i, j) = rng.normal();
  }
  Eigen::MatrixXd mix = Eigen::MatrixXd::Identity(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) mix(i, j) += 0.5 * rng.normal();
  }
  FeatureMatrix m;
  m.values = g * mix;
  for (int i = 0; i < n; ++i) m.row_ids.push_back(fmt::format("r{}", i));
  for (int j = 0; j < p; ++j) m.column_names.push_back(fmt::format("c{}", j));
  return m;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> logistic_six_points() {
  Eigen::MatrixXd x(6, 1);
  x << -2.0, -1.0, -0.5, 0.5, 1.0, 2.0;
  Eigen::VectorXd y(6);
  y << 0, 0, 1, 0, 1, 1;
  return {x, y};
}

std::pair<std::vector<double>, std::vector<double>> ttest_pairs() {
  return {{0.70, 0.65, 0.72, 0.68, 0.66, 0.71, 0.64, 0.69, 0.73, 0.67},
          {0.74, 0.70, 0.71, 0.75, 0.72, 0.78, 0.69, 0.73, 0.76, 0.74}};
}

std::pair<double, double> logistic_grid_search(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  auto ll = [&](double a, double b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double eta = a + b * x(i);
      const double log1pexp = eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
      s += y(i) * eta - log1pexp;
    }
    return s;
  };
  double ca = 0.0, cb = 0.0, half = 10.0;
  while (half > 1e-9) {
    const double step = half / 20.0;
    double best = -HUGE_VAL, ba = ca, bb = cb;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const double a = ca + i * step, b = cb + j * step;
        const double v = ll(a, b);
        if (v > best) {
          best = v;
          ba = a;
          bb = b;
        }
      }
    }
    ca = ba;
    cb = bb;
    half /= 4.0;
  }
  return {ca, cb};
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

Check make_check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

struct LogisticDraw {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;
};

LogisticDraw logistic_draw(std::uint64_t seed) {
  util::Rng rng(seed);
  const int n = 200, k = 4;
  const double beta[k + 1] = {0.3, 1.0, -0.5, 0.25, 0.0};
  LogisticDraw d;
  d.x.resize(n, k);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    double eta = beta[0];
    for (int j = 0; j < k; ++j) {
      d.x(i, j) = rng.normal();
      eta += beta[j + 1] * d.x(i, j);
    }
    d.y(i) = rng.uniform() < 1.0 / (1.0 + std::exp(-eta)) ? 1.0 : 0.0;
  }
  for (int j = 0; j < k; ++j) d.names.push_back(fmt::format("x{}", j + 1));
  return d;
}

std::vector<corpus::Article> fixture_articles(std::size_t per_class) {
  const auto ingest = corpus::ingest_directory(data_dir() / "raw");
  std::vector<corpus::Article> out;
  std::size_t fake = 0, satire = 0;
  for (const auto& a : ingest.articles) {
    auto& count = a.label == Label::Fake ? fake : satire;
    if (count < per_class) {
      out.push_back(a);
      ++count;
    }
  }
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (const char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = util::read_file(e.path());
  }
  return files;
}

}  // namespace

double student_t_two_sided(double t, int df) {
  const double nu = df;
  const double c = std::exp(std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)) / std::sqrt(nu * M_PI);
  const std::function<double(double)> f = [&](double x) { return c * std::pow(1.0 + x * x / nu, -(nu + 1.0) / 2.0); };
  const double b = std::abs(t);
  if (b == 0.0) return 1.0;
  const double fa = f(0.0), fb = f(b), fm = f(0.5 * b);
  const double whole = b / 6.0 * (fa + 4.0 * fm + fb);
  const double central = simpson(f, 0.0, b, fa, fm, fb, whole, 1e-15, 60);
  return 1.0 - 2.0 * central;
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double intercept,
                                  const Eigen::VectorXd& slopes) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.cols() + 1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double eta = intercept + x.row(i).dot(slopes);
    const double r = y(i) - 1.0 / (1.0 + std::exp(-eta));
    g(0) += r;
    g.tail(x.cols()) += r * x.row(i).transpose();
  }
  return g;
}

// --- oracle equivalence suite ---------------------------------------------------------------------

Check pca_eigensolver_oracle(int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FeatureMatrix m = random_matrix(1000 + static_cast<std::uint64_t>(t), 20, 5);
    const auto model = stats::fit_pca(stats::standardize(m));

    const Eigen::Index n = m.rows();
    const Eigen::MatrixXd centered = m.values.rowwise() - m.values.colwise().mean();
    const Eigen::VectorXd sd = (centered.array().square().colwise().sum() / static_cast<double>(n - 1)).sqrt();
    const Eigen::MatrixXd z = centered * sd.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd corr = z.transpose() * z / static_cast<double>(n - 1);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);

    if (model.retained() != 5) return make_check("pca", false, fmt::format("trial {}: {} components", t, model.retained()));
    for (Eigen::Index j = 0; j < 5; ++j) {
      const Eigen::Index o = 4 - j;
      worst = std::max(worst, std::abs(model.eigenvalues(j) - es.eigenvalues()(o)));
      const Eigen::VectorXd v = es.eigenvectors().col(o);
      const double sign = model.eigenvectors.col(j).dot(v) < 0.0 ? -1.0 : 1.0;
      worst = std::max(worst, (model.eigenvectors.col(j) - sign * v).cwiseAbs().maxCoeff());
      worst = std::max(worst, (model.loadings.col(j) - sign * v).cwiseAbs().maxCoeff());
    }
  }
  return make_check("pca vs dense eigensolver", worst < 1e-8,
                    fmt::format("{} random 20x5 matrices, max |delta| {:.3e}", trials, worst));
}

Check logistic_grid_oracle() {
  const auto [x, y] = logistic_six_points();
  const auto fit = stats::fit_logistic(x, y, {"x"});
  const auto [a, b] = logistic_grid_search(x.col(0), y);
  const double delta = std::max(std::abs(fit.intercept.estimate - a), std::abs(fit.predictors[0].estimate - b));
  const bool ok = fit.converged && delta < 1e-4 && fit.gradient_norm < 1e-8;
  return make_check("logistic vs grid search", ok,
                    fmt::format("beta {:.8f} vs grid {:.8f}, intercept {:.8f} vs {:.8f}, |delta| {:.3e}, gradient {:.3e}",
                                fit.predictors[0].estimate, b, fit.intercept.estimate, a, delta, fit.gradient_norm));
}

Check logistic_gradient_check(int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto d = logistic_draw(300 + static_cast<std::uint64_t>(t));
    const auto fit = stats::fit_logistic(d.x, d.y, d.names);
    if (!fit.converged) return make_check("logistic gradient", false, fmt::format("draw {} did not converge", t));
    Eigen::VectorXd slopes(d.x.cols());
    for (Eigen::Index j = 0; j < d.x.cols(); ++j) slopes(j) = fit.predictors[static_cast<std::size_t>(j)].estimate;
    const Eigen::VectorXd g = logistic_gradient(d.x, d.y, fit.intercept.estimate, slopes);
    worst = std::max({worst, g.cwiseAbs().maxCoeff(), fit.gradient_norm});
  }
  return make_check("logistic gradient at optimum", worst < 1e-8,
                    fmt::format("{} converged fits, max gradient {:.3e}", trials, worst));
}

Check mnb_hand_oracle() {
  const std::vector<std::vector<std::string>> docs = {
      {"a", "b", "a"}, {"b", "c"}, {"a", "c", "c"}, {"d", "d", "a", "b"}};
  const std::vector<Label> labels = {Label::Fake, Label::Fake, Label::Fake, Label::Satire};
  const auto model = classify::train_mnb(docs, labels, 1.0);
  const auto post = classify::mnb_posterior(model, {"d", "a", "e"});

  // Fake counts a3 b2 c3 d0 (8 tokens), Satire a1 b1 c0 d2 (4 tokens), 4 vocabulary entries.
  const double fake = std::log(3.0 / 4.0) + std::log(4.0 / 12.0) + std::log(1.0 / 12.0);
  const double satire = std::log(1.0 / 4.0) + std::log(2.0 / 8.0) + std::log(3.0 / 8.0);
  const double norm = std::log(std::exp(fake) + std::exp(satire));
  const double expect_fake[4] = {std::log(4.0 / 12.0), std::log(3.0 / 12.0), std::log(4.0 / 12.0), std::log(1.0 / 12.0)};
  const double expect_satire[4] = {std::log(2.0 / 8.0), std::log(2.0 / 8.0), std::log(1.0 / 8.0), std::log(3.0 / 8.0)};

  double worst = 0.0;
  worst = std::max(worst, std::abs(post.log_joint[0] - fake));
  worst = std::max(worst, std::abs(post.log_joint[1] - satire));
  worst = std::max(worst, std::abs(post.log_posterior[0] - (fake - norm)));
  worst = std::max(worst, std::abs(post.log_posterior[1] - (satire - norm)));
  worst = std::max(worst, std::abs(post.p_satire - 9.0 / 17.0));
  worst = std::max(worst, std::abs(model.log_prior[0] - std::log(0.75)));
  worst = std::max(worst, std::abs(model.log_prior[1] - std::log(0.25)));
  if (model.vocabulary != std::vector<std::string>{"a", "b", "c", "d"}) {
    return make_check("mnb hand posteriors", false, "unexpected vocabulary");
  }
  for (int w = 0; w < 4; ++w) {
    worst = std::max(worst, std::abs(model.log_likelihood[0][static_cast<std::size_t>(w)] - expect_fake[w]));
    worst = std::max(worst, std::abs(model.log_likelihood[1][static_cast<std::size_t>(w)] - expect_satire[w]));
  }
  const bool ok = worst < 1e-12 && post.label == Label::Satire;
  return make_check("mnb hand posteriors", ok, fmt::format("4-document fixture, max |delta| {:.3e}", worst));
}

Check ttest_hand_oracle() {
  const auto [a, b] = ttest_pairs();
  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += (a[i] - b[i] - mean) * (a[i] - b[i] - mean);
  const double t = mean / (std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)));
  const double p = student_t_two_sided(t, static_cast<int>(n) - 1);

  const auto r = classify::paired_ttest(a, b);
  const double worst = std::max({std::abs(r.t - t), std::abs(r.t - kTtestT), std::abs(r.p - p), std::abs(r.p - kTtestP),
                                 std::abs(p - kTtestP)});
  const bool ok = worst < 1e-9 && r.df == 9 && !r.degenerate;
  return make_check("paired t-test", ok,
                    fmt::format("t {:.12f} p {:.12e} (manual {:.12f}, quadrature {:.12e}), max |delta| {:.3e}", r.t, r.p,
                                t, p, worst));
}

// --- invariant suite ----------------------------------------------------------------------------------

Check duplication_invariance(std::size_t per_class) {
  const auto& res = resources();
  const auto catalog = features::load_catalog(resource_dir() / "config" / "catalog.tsv");
  const auto coef = features::load_readability_coefficients(resource_dir() / "config" / "readability.conf");
  double worst = 0.0;
  std::string where = "-";
  std::size_t checked = 0;
  const auto articles = fixture_articles(per_class);
  for (const auto& a : articles) {
    const std::string text = corpus::full_text(a);
    const auto once = features::compute_indices(textproc::analyze(text, res.tagger, res.lemmatizer), res, coef);
    const auto twice =
        features::compute_indices(textproc::analyze(text + "\n\n" + text, res.tagger, res.lemmatizer), res, coef);
    checked = 0;
    for (const auto& d : catalog.indices) {
      if (!d.duplication_invariant || d.composite) continue;
      ++checked;
      const double delta = std::abs(once.at(d.name).value - twice.at(d.name).value);
      if (delta > worst || std::isnan(delta)) {
        worst = std::isnan(delta) ? HUGE_VAL : delta;
        where = fmt::format("{} in {}", d.name, a.id);
      }
    }
  }
  return make_check("duplication invariance", worst < 1e-9 && checked > 0,
                    fmt::format("{} ratio indices on {} articles, max |delta| {:.3e} ({})", checked, articles.size(),
                                worst, where));
}

Check cosine_ranges() {
  util::Rng rng(77);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 1 + rng.below(8);
    std::vector<double> a(dim), b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      a[i] = rng.normal();
      b[i] = t % 3 == 0 ? -2.5 * a[i] : rng.normal();
    }
    const double c = features::cosine(a, b);
    if (!(c >= -1.0 && c <= 1.0)) return make_check("cosine ranges", false, fmt::format("cosine {} out of range", c));
    if (std::abs(features::cosine(a, a) - 1.0) > 1e-12) return make_check("cosine ranges", false, "self-cosine is not 1");
  }
  const auto& res = resources();
  const auto coef = features::load_readability_coefficients(resource_dir() / "config" / "readability.conf");
  const auto articles = fixture_articles(5);
  for (const auto& a : articles) {
    const auto v = features::compute_indices(textproc::analyze(corpus::full_text(a), res.tagger, res.lemmatizer), res, coef);
    for (const char* name : {"lsa_adjacent", "lsa_paragraph", "lsa_verbs", "givenness"}) {
      const double x = v.at(name).value;
      if (!(x >= -1.0 && x <= 1.0)) {
        return make_check("cosine ranges", false, fmt::format("{} = {} for {}", name, x, a.id));
      }
    }
  }
  return make_check("cosine ranges", true,
                    fmt::format("1000 random pairs and 4 cosine indices on {} articles lie in [-1, 1]", articles.size()));
}

Check varimax_communalities(int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto z = stats::standardize(random_matrix(2000 + static_cast<std::uint64_t>(t), 60, 6));
    const auto model = stats::fit_pca(z);
    const auto rotated = stats::varimax_rotate(model);
    const Eigen::MatrixXd before = stats::factor_loadings(model);
    const Eigen::VectorXd h_before = before.rowwise().squaredNorm();
    const Eigen::VectorXd h_after = rotated.loadings.rowwise().squaredNorm();
    worst = std::max(worst, (h_before - h_after).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rotated.rotation.cols(), rotated.rotation.cols());
    worst = std::max(worst, (rotated.rotation.transpose() * rotated.rotation - id).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(before.squaredNorm() - rotated.loadings.squaredNorm()));
  }
  return make_check("varimax communalities", worst < 1e-8,
                    fmt::format("{} rotations, max |delta| of communalities, orthogonality and total variance {:.3e}",
                                trials, worst));
}

Check fold_bounds() {
  std::vector<std::string> ids;
  std::vector<Label> labels;
  util::Rng rng(5);
  std::size_t fake = 0, satire = 0;
  while (fake + satire < 486) {
    const bool pick_fake = satire == 203 || (fake < 283 && rng.below(486) < 283);
    ids.push_back(fmt::format("a{}", ids.size()));
    labels.push_back(pick_fake ? Label::Fake : Label::Satire);
    ++(pick_fake ? fake : satire);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto plan = classify::make_folds(ids, labels, 10, seed);
    std::vector<int> f(10, 0), s(10, 0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const int fold = plan.folds[i];
      if (fold < 0 || fold >= 10 || plan.ids[i] != ids[i]) return make_check("fold bounds", false, "bad assignment");
      ++(plan.labels[i] == Label::Fake ? f : s)[static_cast<std::size_t>(fold)];
    }
    for (int k = 0; k < 10; ++k) {
      if (f[static_cast<std::size_t>(k)] < 28 || f[static_cast<std::size_t>(k)] > 29 ||
          s[static_cast<std::size_t>(k)] < 20 || s[static_cast<std::size_t>(k)] > 21) {
        return make_check("fold bounds", false,
                          fmt::format("seed {} fold {}: {} fake, {} satire", seed, k, f[static_cast<std::size_t>(k)],
                                      s[static_cast<std::size_t>(k)]));
      }
    }
  }
  return make_check("fold bounds", true, "283 fake + 203 satire, 20 seeds: every fold holds 28-29 fake and 20-21 satire");
}

Check wald_identity(int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto d = logistic_draw(500 + static_cast<std::uint64_t>(t));
    const auto fit = stats::fit_logistic(d.x, d.y, d.names);
    std::vector<stats::Coefficient> all = fit.predictors;
    all.push_back(fit.intercept);
    for (const auto& c : all) {
      worst = std::max(worst, std::abs(c.z - c.estimate / c.std_error));
      worst = std::max(worst, std::abs(stats::normal_two_sided_p(c.z) - stats::normal_two_sided_p(-c.z)));
      worst = std::max(worst, std::abs(c.p_value - stats::normal_two_sided_p(c.z)));
    }
  }
  return make_check("z = beta / SE", worst < 1e-10, fmt::format("{} fits, max |delta| {:.3e}", trials, worst));
}

Check f1_identity() {
  util::Rng rng(11);
  std::vector<std::string> ids;
  std::vector<Label> labels;
  for (int i = 0; i < 300; ++i) {
    ids.push_back(fmt::format("d{}", i));
    labels.push_back(rng.uniform() < 0.45 ? Label::Satire : Label::Fake);
  }
  const auto plan = classify::make_folds(ids, labels, 10, 3);
  double worst = 0.0;
  std::size_t folds = 0;
  for (const double bias : {0.5, 0.05, 0.95, 2.0}) {
    std::vector<classify::Prediction> preds;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const double score = std::min(1.0, rng.uniform() * bias + (plan.labels[i] == Label::Satire ? 0.2 : 0.0));
      preds.push_back({plan.ids[i], plan.folds[i], plan.labels[i], score > 0.5 ? Label::Satire : Label::Fake, score, "m"});
    }
    for (const auto positive : {Label::Fake, Label::Satire}) {
      const auto report = classify::evaluate(preds, plan, positive);
      for (const auto& f : report.folds) {
        ++folds;
        for (const double v : {f.precision, f.recall, f.f1, f.macro_f1}) {
          if (!(v >= 0.0 && v <= 1.0)) return make_check("F1 identity", false, fmt::format("metric {} outside [0, 1]", v));
        }
        const double h = f.precision + f.recall > 0.0 ? 2.0 * f.precision * f.recall / (f.precision + f.recall) : 0.0;
        worst = std::max(worst, std::abs(f.f1 - h));
      }
    }
  }
  return make_check("F1 harmonic identity", worst < 1e-12,
                    fmt::format("{} folds, max |F1 - 2PR/(P+R)| {:.3e}", folds, worst));
}

int run_cli(const std::vector<std::string>& args, const std::string& out_file, const std::string& err_file) {
  std::string cmd = shell_quote(cli_binary().string());
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " >" + shell_quote(out_file) + " 2>" + shell_quote(err_file);
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Check cli_determinism() {
  const fs::path base = scratch("cli_determinism");
  const fs::path w = base / "w";
  const fs::path logs = base / "logs";
  const std::string raw = (data_dir() / "raw").string();
  const std::string gold = (data_dir() / "tagger_gold.txt").string();
  const std::string reduced = (w / "reduced.csv").string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"ingest", {"--output", w.string(), "ingest", "--raw", raw}},
      {"extract", {"--output", w.string(), "extract"}},
      {"analyze", {"--output", w.string(), "analyze", "--features", reduced}},
      {"split", {"--output", w.string(), "split"}},
      {"evaluate", {"--output", w.string(), "evaluate", "--features", reduced}},
      {"run", {"--output", (w / "run").string(), "run", "--raw", raw}},
      {"train-tagger", {"--seed", "3", "train-tagger", "--train", gold, "--out", (w / "tagger.model").string(),
                        "--iterations", "2"}},
      {"eval-tagger", {"eval-tagger", "--model", (w / "tagger.model").string(), "--gold", gold}},
  };

  std::map<std::string, std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    fs::remove_all(w);
    fs::remove_all(logs);
    fs::create_directories(w);
    fs::create_directories(logs);
    for (const auto& [name, args] : commands) {
      const int code = run_cli(args, (logs / (name + ".out")).string(), (logs / (name + ".err")).string());
      if (code != 0) {
        return make_check("CLI determinism", false,
                          fmt::format("{} exited {}: {}", name, code, util::read_file(logs / (name + ".err"))));
      }
      if (name == "extract") {
        const auto full = corpus::read_features(w / "features.csv");
        FeatureMatrix m;
        m.row_ids = full.row_ids;
        m.column_names = {"mean_sentence_length", "first_person_singular_incidence", "agentless_passive_density",
                          "verb_incidence", "lexical_diversity"};
        m.values.resize(full.rows(), static_cast<Eigen::Index>(m.column_names.size()));
        for (std::size_t j = 0; j < m.column_names.size(); ++j) {
          m.values.col(static_cast<Eigen::Index>(j)) = full.values.col(full.column(m.column_names[j]));
        }
        corpus::write_features(m, reduced);
      }
    }
    auto files = snapshot(w);
    for (auto& [k, v] : snapshot(logs)) files["logs/" + k] = std::move(v);
    if (pass == 0) {
      first = std::move(files);
      continue;
    }
    if (files.size() != first.size()) {
      return make_check("CLI determinism", false, fmt::format("{} files, then {}", first.size(), files.size()));
    }
    for (const auto& [path, content] : first) {
      const auto it = files.find(path);
      if (it == files.end() || it->second != content) {
        return make_check("CLI determinism", false, fmt::format("{} differs between runs", path));
      }
    }
    return make_check("CLI determinism", true,
                      fmt::format("{} commands, {} output files byte-identical across two runs", commands.size(),
                                  first.size()));
  }
  return make_check("CLI determinism", false, "unreachable");
}

}  // namespace satfake::test
