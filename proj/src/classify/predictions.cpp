#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::classify {

namespace {

std::string id_list(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 10;
  std::vector<std::string> head(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(std::min(ids.size(), kShown)));
  std::string out = fmt::format("{}", fmt::join(head, ", "));
  if (ids.size() > kShown) out += fmt::format(" (+{} more)", ids.size() - kShown);
  return out;
}

}  // namespace

std::string serialize_predictions(const std::vector<Prediction>& predictions) {
  std::string out;
  for (const auto& p : predictions) {
    if (!std::isfinite(p.score)) throw ValidationError(fmt::format("prediction for '{}' has a non-finite score", p.article_id));
    nlohmann::ordered_json obj;
    obj["articleId"] = p.article_id;
    obj["fold"] = p.fold;
    obj["trueLabel"] = corpus::label_name(p.true_label);
    obj["predictedLabel"] = corpus::label_name(p.predicted);
    obj["score"] = p.score;
    obj["method"] = p.method;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<Prediction> parse_predictions(std::string_view data) {
  std::vector<Prediction> out;
  std::size_t line_no = 0;
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(fmt::format("predictions line {}: {}", line_no, e.what()));
    }
    auto fail = [&](std::string_view what) {
      return ParseError(fmt::format("predictions line {}: {}", line_no, what));
    };
    if (!obj.is_object()) throw fail("record is not an object");
    static const char* const kKeys[] = {"articleId", "fold", "trueLabel", "predictedLabel", "score", "method"};
    for (const char* key : kKeys) {
      if (!obj.contains(key)) throw fail(fmt::format("missing key '{}'", key));
    }
    if (obj.size() != 6) throw fail("unexpected extra keys");
    Prediction p;
    if (!obj["articleId"].is_string() || !obj["method"].is_string()) throw fail("articleId and method must be strings");
    if (!obj["fold"].is_number_integer()) throw fail("fold must be an integer");
    if (!obj["score"].is_number()) throw fail("score must be a number");
    if (!obj["trueLabel"].is_string() || !obj["predictedLabel"].is_string()) throw fail("labels must be strings");
    p.article_id = obj["articleId"].get<std::string>();
    p.fold = obj["fold"].get<int>();
    p.score = obj["score"].get<double>();
    p.method = obj["method"].get<std::string>();
    const auto t = obj["trueLabel"].get<std::string>();
    const auto pr = obj["predictedLabel"].get<std::string>();
    if (t != "fake" && t != "satire") throw fail(fmt::format("unknown trueLabel '{}'", t));
    if (pr != "fake" && pr != "satire") throw fail(fmt::format("unknown predictedLabel '{}'", pr));
    p.true_label = t == "fake" ? Label::Fake : Label::Satire;
    p.predicted = pr == "fake" ? Label::Fake : Label::Satire;
    if (!std::isfinite(p.score)) throw fail("score is not finite");
    if (p.article_id.empty() || p.method.empty()) throw fail("empty articleId or method");
    out.push_back(std::move(p));
  }
  return out;
}

void write_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& path) {
  util::write_file_atomic(path, serialize_predictions(predictions));
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  return parse_predictions(util::read_file(path, "predictions"));
}

void validate_predictions(const std::vector<Prediction>& predictions, const SplitPlan& plan) {
  if (predictions.empty()) throw ValidationError("prediction set is empty");
  const std::string& method = predictions.front().method;
  std::unordered_map<std::string, std::size_t> plan_index;
  for (std::size_t i = 0; i < plan.ids.size(); ++i) plan_index.emplace(plan.ids[i], i);

  std::vector<std::string> unknown, duplicate, wrong_fold, wrong_label, other_method;
  std::vector<bool> covered(plan.ids.size(), false);
  double max_fake = -std::numeric_limits<double>::infinity();
  double min_satire = std::numeric_limits<double>::infinity();
  for (const auto& p : predictions) {
    if (p.method != method) other_method.push_back(p.article_id);
    const auto it = plan_index.find(p.article_id);
    if (it == plan_index.end()) {
      unknown.push_back(p.article_id);
      continue;
    }
    if (covered[it->second]) duplicate.push_back(p.article_id);
    covered[it->second] = true;
    if (plan.folds[it->second] != p.fold) wrong_fold.push_back(p.article_id);
    if (plan.labels[it->second] != p.true_label) wrong_label.push_back(p.article_id);
    if (p.predicted == Label::Fake) max_fake = std::max(max_fake, p.score);
    if (p.predicted == Label::Satire) min_satire = std::min(min_satire, p.score);
  }
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) missing.push_back(plan.ids[i]);
  }

  std::vector<std::string> problems;
  if (!other_method.empty()) problems.push_back("mixed methods: " + id_list(other_method));
  if (!unknown.empty()) problems.push_back("ids not in split plan: " + id_list(unknown));
  if (!duplicate.empty()) problems.push_back("duplicate ids: " + id_list(duplicate));
  if (!missing.empty()) problems.push_back("missing ids: " + id_list(missing));
  if (!wrong_fold.empty()) problems.push_back("fold differs from split plan: " + id_list(wrong_fold));
  if (!wrong_label.empty()) problems.push_back("true label differs from corpus: " + id_list(wrong_label));
  if (max_fake > min_satire) {
    problems.push_back(fmt::format("predicted labels are not consistent with one score threshold "
                                   "(a fake prediction scores {} above a satire prediction scoring {})",
                                   max_fake, min_satire));
  }
  if (!problems.empty()) {
    throw ValidationError(fmt::format("predictions for method '{}': {}", method, fmt::join(problems, "; ")));
  }
}

}  // namespace satfake::classify
