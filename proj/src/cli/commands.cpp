#include <algorithm>
#include <iostream>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "satfake/classify.hpp"
#include "satfake/cli.hpp"
#include "satfake/error.hpp"
#include "satfake/features.hpp"
#include "satfake/pipeline.hpp"
#include "satfake/stats.hpp"
#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::cli {

namespace fs = std::filesystem;
using corpus::Label;

namespace {

void info(const std::string& msg) { fmt::print(stderr, "satfake: {}\n", msg); }

// Command-line overrides, applied on top of the config file.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<double> alpha;
  std::string positive;
  std::string methods;
  std::optional<std::size_t> limit;
  std::string output;
  std::string corpus;
  std::string resource_dir;
  std::string baseline;
  std::string svm_features;
  std::vector<std::string> predictions;
  std::string rotation;
};

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config.empty() ? default_config() : load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.k) c.k = *o.k;
  if (o.alpha) c.alpha = *o.alpha;
  if (!o.positive.empty()) {
    const auto l = corpus::parse_label(o.positive);
    if (!l) throw ConfigError(fmt::format("--positive-class: unknown label '{}'", o.positive));
    c.positive = *l;
  }
  if (!o.methods.empty()) {
    RunConfig tmp;
    apply_config_text(tmp, "methods = " + o.methods, {});
    c.methods = tmp.methods;
  }
  if (o.limit) c.limit = *o.limit;
  if (!o.output.empty()) c.output = o.output;
  if (!o.corpus.empty()) c.corpus = o.corpus;
  if (!o.resource_dir.empty()) {
    c.resource_dir = o.resource_dir;
    c.resources.clear();
    c.catalog.clear();
    c.readability.clear();
  }
  if (!o.baseline.empty()) c.baseline = o.baseline;
  if (!o.svm_features.empty()) c.svm_features = o.svm_features;
  for (const auto& p : o.predictions) c.external_predictions.emplace_back(p);
  if (!o.rotation.empty()) {
    if (o.rotation == "varimax") {
      c.rotate = true;
    } else if (o.rotation == "none") {
      c.rotate = false;
    } else {
      throw ConfigError(fmt::format("--rotation: expected varimax or none, got '{}'", o.rotation));
    }
  }
  finalize_config(c);
  return c;
}

fs::path default_corpus(const RunConfig& c) { return c.corpus.empty() ? c.output / "corpus.jsonl" : c.corpus; }
fs::path features_path(const RunConfig& c) { return c.output / "features.csv"; }

std::vector<corpus::Article> load_articles(const RunConfig& c) {
  const fs::path path = default_corpus(c);
  auto corp = corpus::load_corpus(path);
  for (const auto& r : corp.rejections) info(fmt::format("{}: line {} rejected: {}", path.generic_string(), r.line, r.reason));
  auto articles = std::move(corp.articles);
  if (c.limit > 0 && articles.size() > c.limit) articles.resize(c.limit);
  if (articles.empty()) throw ValidationError(fmt::format("corpus {} holds no articles", path.generic_string()));
  return articles;
}

std::vector<Label> labels_for(const FeatureMatrix& m, const std::vector<corpus::Article>& articles) {
  std::unordered_map<std::string, Label> by_id;
  for (const auto& a : articles) by_id.emplace(a.id, a.label);
  std::vector<Label> out;
  std::vector<std::string> missing;
  for (const auto& id : m.row_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      missing.push_back(id);
    } else {
      out.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    throw ValidationError(fmt::format("{} feature row(s) have no corpus article, e.g. {}", missing.size(), missing.front()));
  }
  return out;
}

// --- ingest ----------------------------------------------------------------------------------------

int do_ingest(const fs::path& raw_dir, const fs::path& out) {
  if (!fs::is_directory(raw_dir)) throw IoError(fmt::format("raw dataset directory {} not found", raw_dir.generic_string()));
  auto result = corpus::ingest_directory(raw_dir);
  const std::size_t total = result.articles.size() + result.rejected.size();
  if (total == 0) throw ValidationError(fmt::format("no story files under {}", raw_dir.generic_string()));

  corpus::write_corpus(result.articles, out);
  std::string rej = "path\treason\n";
  for (const auto& [path, reason] : result.rejected) rej += fmt::format("{}\t{}\n", path, reason);
  util::write_file_atomic(out.parent_path() / "ingest_rejections.tsv", rej);

  fmt::print("Fake: {}, Satire: {}\n", result.fake, result.satire);
  if (!result.rejected.empty()) {
    info(fmt::format("{} of {} story files rejected (see ingest_rejections.tsv)", result.rejected.size(), total));
  }
  if (static_cast<double>(result.rejected.size()) > 0.05 * static_cast<double>(total)) {
    throw ValidationError(fmt::format("{} of {} story files rejected, above the 5% limit", result.rejected.size(), total));
  }
  return kOk;
}

// --- extract ----------------------------------------------------------------------------------------

int do_extract(const RunConfig& c) {
  const auto articles = load_articles(c);
  const auto resources = corpus::load_resources(c.resources);
  for (const auto& r : resources.report) {
    info(fmt::format("resource {}: {} entries, {} skipped", r.name, r.stats.entries, r.stats.skipped));
  }
  const auto catalog = features::load_catalog(c.catalog);
  const auto coef = features::load_readability_coefficients(c.readability);
  const auto m = features::extract_matrix(articles, resources, catalog, coef);
  fs::create_directories(c.output);
  corpus::write_features(m, features_path(c));
  fs::path flags = features_path(c);
  flags.replace_extension(".flags.csv");
  corpus::write_flags(m, flags);
  fmt::print("Extracted {} rows x {} indices to {}\n", m.rows(), m.cols(), features_path(c).generic_string());
  return kOk;
}

// --- analyze ----------------------------------------------------------------------------------------

pipeline::AnalysisOptions analysis_options(const RunConfig& c) {
  pipeline::AnalysisOptions o;
  o.alpha = c.alpha;
  o.rotate = c.rotate;
  o.kaiser = c.kaiser;
  return o;
}

int do_analyze(const RunConfig& c, const fs::path& features_file) {
  const auto articles = load_articles(c);
  const auto raw = corpus::read_features(features_file);
  const auto labels = labels_for(raw, articles);
  const auto catalog = features::load_catalog(c.catalog);
  const fs::path dir = c.output / "analysis";
  fs::create_directories(dir);

  std::string diagnostics;
  pipeline::Analysis a;
  try {
    a = pipeline::run_analysis(raw, labels, analysis_options(c), &catalog, &diagnostics);
  } catch (const Error& e) {
    diagnostics += fmt::format("error: {}\n", e.what());
    util::write_file_atomic(dir / "diagnostics.txt", diagnostics);
    info(fmt::format("analysis failed; diagnostics in {}", (dir / "diagnostics.txt").generic_string()));
    throw;
  }
  util::write_file_atomic(dir / "diagnostics.txt", diagnostics);
  for (const auto& w : a.full.warnings) info("full fit: " + w);
  stats::write_pca_model(a.model, dir / "pca_model.tsv");
  util::write_file_atomic(dir / "coefficients_full.tsv", stats::render_fit_tsv(a.full));
  util::write_file_atomic(dir / "coefficients_stepwise.tsv", stats::render_fit_tsv(a.stepwise.final_fit));
  std::string removals = "step\tremoved\tp_value\tstatistic\n";
  for (std::size_t i = 0; i < a.stepwise.removals.size(); ++i) {
    const auto& r = a.stepwise.removals[i];
    removals += fmt::format("{}\t{}\t{}\t{}\n", i + 1, r.name, util::format_double(r.p_value), util::format_double(r.z));
  }
  util::write_file_atomic(dir / "stepwise_removals.tsv", removals);
  std::string components = "component\tdominant_index\tdescription\n";
  for (std::size_t j = 0; j < a.model.component_names.size(); ++j) {
    components += fmt::format("{}\t{}\t{}\n", a.model.component_names[j], a.model.component_labels[j], a.descriptions[j]);
  }
  util::write_file_atomic(dir / "components.tsv", components);
  util::write_file_atomic(dir / "selected_indices.txt", fmt::format("{}\n", fmt::join(a.selected_indices, "\n")));
  const std::string table = stats::render_table_text(a.table);
  util::write_file_atomic(dir / "significance.txt", table);
  util::write_file_atomic(dir / "significance.tsv", stats::render_table_tsv(a.table));
  const auto directions = pipeline::check_directions(a.table);
  util::write_file_atomic(dir / "directions.tsv", directions.report);
  fmt::print("{}", table);
  for (const auto& n : directions.notices) info(n);
  return kOk;
}

// --- split and evaluate -------------------------------------------------------------------------------

classify::SplitPlan make_plan(const RunConfig& c, const std::vector<corpus::Article>& articles) {
  auto plan = classify::make_folds(articles, c.k, c.seed);
  fs::create_directories(c.output);
  classify::write_split_plan(plan, c.output / "split_plan.tsv");
  return plan;
}

int do_split(const RunConfig& c) {
  const auto plan = make_plan(c, load_articles(c));
  fmt::print("Wrote {}-fold split of {} articles to {}\n", plan.k, plan.size(),
             (c.output / "split_plan.tsv").generic_string());
  return kOk;
}

int do_evaluate(const RunConfig& c, const fs::path& features_file) {
  const auto articles = load_articles(c);
  const auto plan = make_plan(c, articles);
  fs::create_directories(c.output / "predictions");
  fs::create_directories(c.output / "reports");

  std::vector<std::vector<classify::Prediction>> sets;
  for (const auto& m : c.methods) {
    if (m == "mnb") {
      sets.push_back(pipeline::cross_validate_mnb(articles, plan, m));
    } else {
      pipeline::SvmCvOptions o;
      o.features = *pipeline::parse_svm_features(c.svm_features);
      o.svm.lambda = c.svm_lambda;
      o.svm.epochs = c.svm_epochs;
      o.svm.seed = c.seed;
      o.svm.initial_step = c.svm_step;
      o.analysis = analysis_options(c);
      o.method = m;
      std::vector<pipeline::FoldLog> log;
      sets.push_back(pipeline::cross_validate_svm(corpus::read_features(features_file), plan, o, &log));
      std::string folds = "fold\tobjective\tcolumns\twarnings\n";
      for (const auto& f : log) {
        for (const auto& w : f.warnings) info(fmt::format("{} fold {}: {}", m, f.fold, w));
        folds += fmt::format("{}\t{}\t{}\t{}\n", f.fold, util::format_double(f.objective), fmt::join(f.columns, ","),
                             fmt::join(f.warnings, "; "));
      }
      util::write_file_atomic(c.output / "reports" / (m + "_folds.tsv"), folds);
    }
    classify::write_predictions(sets.back(), c.output / "predictions" / (m + ".jsonl"));
  }
  for (const auto& p : c.external_predictions) {
    auto preds = classify::read_predictions(p);
    if (preds.empty()) throw ValidationError(fmt::format("prediction file {} is empty", p.generic_string()));
    info(fmt::format("external predictions for '{}' from {}", preds.front().method, p.generic_string()));
    sets.push_back(std::move(preds));
  }

  std::vector<classify::EvalReport> reports;
  for (const auto& s : sets) {
    const std::string& method = s.front().method;
    for (const auto& r : reports) {
      if (r.method == method) throw ValidationError(fmt::format("method '{}' appears twice", method));
    }
    reports.push_back(classify::evaluate(s, plan, c.positive));
    util::write_file_atomic(c.output / "reports" / (method + ".tsv"), classify::render_report_tsv(reports.back()));
    fmt::print("{}: precision {:.3f} recall {:.3f} F1 {:.3f} macro-F1 {:.3f}\n", method, reports.back().precision,
               reports.back().recall, reports.back().f1, reports.back().macro_f1);
  }
  if (reports.size() >= 2) {
    const auto cmp = classify::compare_methods(reports, c.baseline);
    const std::string text = classify::render_comparison_text(cmp);
    util::write_file_atomic(c.output / "comparison.txt", text);
    util::write_file_atomic(c.output / "comparison.tsv", classify::render_comparison_tsv(cmp));
    fmt::print("\n{}", text);
  }
  return kOk;
}

// --- tagger ----------------------------------------------------------------------------------------------

std::vector<textproc::TaggedSentence> read_corpora(const std::vector<std::string>& paths) {
  std::vector<textproc::TaggedSentence> all;
  for (const auto& p : paths) {
    auto part = textproc::read_tagged_corpus(p);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kConvergence;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const EmptyDocumentError*>(&e)) {
    return kValidation;
  }
  if (dynamic_cast<const fs::filesystem_error*>(&e)) return kIo;
  return kFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"Coherence-feature study of fake news versus satire"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "Run configuration file");
  app.add_option("--seed", o.seed, "Seed for fold assignment and SVM training");
  app.add_option("--k", o.k, "Number of cross-validation folds");
  app.add_option("--alpha", o.alpha, "Stepwise elimination threshold");
  app.add_option("--positive-class", o.positive, "Positive class for precision and recall (fake|satire)");
  app.add_option("--methods", o.methods, "Comma-separated methods (mnb,svm-coh)");
  app.add_option("--limit", o.limit, "Use only the first N corpus articles");
  app.add_option("--output", o.output, "Output directory");
  app.add_option("--corpus", o.corpus, "Canonical corpus file");
  app.add_option("--resource-dir", o.resource_dir, "Resource directory");
  app.add_option("--baseline", o.baseline, "Baseline method of the comparison");
  app.add_option("--svm-features", o.svm_features, "SVM input: survivors, raw or scores");
  app.add_option("--rotation", o.rotation, "varimax or none");

  std::string raw_dir, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Build the canonical corpus from a raw dataset directory");
  ingest->add_option("--raw", raw_dir, "Raw dataset directory")->required();
  ingest->add_option("--out", ingest_out, "Corpus file (default <output>/corpus.jsonl)");

  auto* extract = app.add_subcommand("extract", "Compute the index table");

  std::string features_in;
  auto* analyze = app.add_subcommand("analyze", "Components, logistic regression and significance table");
  analyze->add_option("--features", features_in, "Feature table (default <output>/features.csv)");

  auto* split = app.add_subcommand("split", "Write the stratified split plan");

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated classifiers, reports and comparison");
  evaluate->add_option("--features", features_in, "Feature table (default <output>/features.csv)");
  evaluate->add_option("--predictions", o.predictions, "External prediction file (repeatable)");

  auto* run_all = app.add_subcommand("run", "ingest (when raw_dir is set), extract, analyze, evaluate");
  run_all->add_option("--raw", raw_dir, "Raw dataset directory");
  run_all->add_option("--predictions", o.predictions, "External prediction file (repeatable)");

  std::vector<std::string> train_files;
  std::string model_out;
  textproc::PerceptronTagger::TrainOptions topts;
  auto* train_tagger = app.add_subcommand("train-tagger", "Train the part-of-speech model");
  train_tagger->add_option("--train", train_files, "word/TAG corpus, one sentence per line (repeatable)")->required();
  train_tagger->add_option("--out", model_out, "Model file")->required();
  train_tagger->add_option("--iterations", topts.iterations, "Training passes");
  train_tagger->add_option("--prune", topts.prune_below, "Drop averaged weights below this magnitude");

  std::string model_in, gold;
  auto* eval_tagger = app.add_subcommand("eval-tagger", "Token accuracy of a model on a gold corpus");
  eval_tagger->add_option("--model", model_in, "Model file")->required();
  eval_tagger->add_option("--gold", gold, "word/TAG gold corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train_tagger) {
      const auto corpus = read_corpora(train_files);
      if (o.seed) topts.seed = *o.seed;
      const auto model = textproc::PerceptronTagger::train(corpus, topts);
      model.save(model_out);
      fmt::print("Trained on {} sentences; {} features\n", corpus.size(), model.feature_count());
      return kOk;
    }
    if (*eval_tagger) {
      const auto model = textproc::PerceptronTagger::load(model_in);
      const auto corpus = textproc::read_tagged_corpus(gold);
      fmt::print("accuracy {:.4f} on {} sentences\n", textproc::tagging_accuracy(model, corpus), corpus.size());
      return kOk;
    }

    RunConfig c = resolve_config(o);
    const fs::path features_file = features_in.empty() ? features_path(c) : fs::path(features_in);
    if (*ingest) {
      return do_ingest(raw_dir, ingest_out.empty() ? c.output / "corpus.jsonl" : fs::path(ingest_out));
    }
    if (*extract) return do_extract(c);
    if (*analyze) return do_analyze(c, features_file);
    if (*split) return do_split(c);
    if (*evaluate) return do_evaluate(c, features_file);
    if (*run_all) {
      if (!raw_dir.empty()) c.raw_dir = raw_dir;
      fs::create_directories(c.output);
      util::write_file_atomic(c.output / "run_config.txt", render_config(c));
      if (!c.raw_dir.empty()) {
        do_ingest(c.raw_dir, c.output / "corpus.jsonl");
        c.corpus = c.output / "corpus.jsonl";
      }
      do_extract(c);
      do_analyze(c, features_path(c));
      return do_evaluate(c, features_path(c));
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "satfake: error: {}\n", e.what());
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace satfake::cli
