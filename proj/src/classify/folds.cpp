#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/util/rng.hpp"
#include "satfake/util/text.hpp"

namespace satfake::classify {

int SplitPlan::fold_of(const std::string& id) const {
  const auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? -1 : folds[static_cast<std::size_t>(it - ids.begin())];
}

SplitPlan make_folds(const std::vector<std::string>& ids, const std::vector<Label>& labels, int k,
                     std::uint64_t seed) {
  if (k < 2) throw ValidationError(fmt::format("k must be at least 2, got {}", k));
  if (ids.size() != labels.size()) throw ValidationError("make_folds: ids and labels differ in length");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < ids.size(); ++i) by_class[labels[i] == Label::Satire ? 1 : 0].push_back(i);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw ValidationError(fmt::format("class '{}' has {} articles, fewer than k = {}",
                                        corpus::label_name(c ? Label::Satire : Label::Fake), by_class[c].size(), k));
    }
  }

  SplitPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.ids = ids;
  plan.labels = labels;
  plan.folds.assign(ids.size(), -1);
  util::Rng rng(seed);
  std::size_t next = 0;
  for (auto& members : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    for (const std::size_t i : members) {
      plan.folds[i] = static_cast<int>(next % static_cast<std::size_t>(k));
      ++next;
    }
  }
  return plan;
}

SplitPlan make_folds(const std::vector<corpus::Article>& articles, int k, std::uint64_t seed) {
  std::vector<std::string> ids;
  std::vector<Label> labels;
  for (const auto& a : articles) {
    ids.push_back(a.id);
    labels.push_back(a.label);
  }
  return make_folds(ids, labels, k, seed);
}

std::string serialize_split_plan(const SplitPlan& plan) {
  std::string out = fmt::format("# satfake-splitplan\t1\n# k\t{}\n# seed\t{}\narticleId\tlabel\tfold\n", plan.k, plan.seed);
  for (std::size_t i = 0; i < plan.ids.size(); ++i) {
    out += fmt::format("{}\t{}\t{}\n", plan.ids[i], corpus::label_name(plan.labels[i]), plan.folds[i]);
  }
  return out;
}

SplitPlan parse_split_plan(std::string_view data) {
  SplitPlan plan;
  plan.k = 0;
  bool header = false;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty()) continue;
    const auto f = util::split(line, '\t');
    if (line.front() == '#') {
      if (f.size() == 2 && util::trim(f[0]) == "# k") plan.k = static_cast<int>(util::parse_int(f[1]).value_or(0));
      if (f.size() == 2 && util::trim(f[0]) == "# seed") {
        plan.seed = static_cast<std::uint64_t>(util::parse_int(f[1]).value_or(0));
      }
      continue;
    }
    if (!header) {
      if (f.size() != 3 || f[0] != "articleId") throw ParseError("split plan: missing header row");
      header = true;
      continue;
    }
    const auto label = f.size() == 3 ? corpus::parse_label(f[1]) : std::nullopt;
    const auto fold = f.size() == 3 ? util::parse_int(f[2]) : std::nullopt;
    if (!label || !fold || *fold < 0) throw ParseError(fmt::format("split plan line {}: malformed row", line_no));
    if (!seen.insert(std::string(f[0])).second) {
      throw ValidationError(fmt::format("split plan line {}: duplicate id '{}'", line_no, f[0]));
    }
    plan.ids.emplace_back(f[0]);
    plan.labels.push_back(*label);
    plan.folds.push_back(static_cast<int>(*fold));
  }
  if (!header) throw ParseError("split plan: missing header row");
  if (plan.k < 2) throw ParseError("split plan: missing or invalid '# k' line");
  for (std::size_t i = 0; i < plan.folds.size(); ++i) {
    if (plan.folds[i] >= plan.k) throw ValidationError(fmt::format("split plan: fold {} out of range", plan.folds[i]));
  }
  return plan;
}

void write_split_plan(const SplitPlan& plan, const std::filesystem::path& path) {
  util::write_file_atomic(path, serialize_split_plan(plan));
}

SplitPlan read_split_plan(const std::filesystem::path& path) {
  return parse_split_plan(util::read_file(path, "split plan"));
}

}  // namespace satfake::classify
