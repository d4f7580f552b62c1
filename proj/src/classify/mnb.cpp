#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "satfake/classify.hpp"
#include "satfake/error.hpp"
#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::classify {

std::vector<std::string> bag_of_words(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : textproc::tokenize({0, text.size()}, text)) {
    if (textproc::is_word(t.surface)) out.push_back(util::to_lower(t.surface));
  }
  return out;
}

MnbModel train_mnb(const std::vector<std::vector<std::string>>& documents, const std::vector<Label>& labels,
                   double alpha) {
  if (documents.size() != labels.size()) throw ValidationError("train_mnb: documents and labels differ in length");
  if (!(alpha > 0.0)) throw ValidationError("train_mnb: smoothing must be positive");
  std::size_t docs[2] = {0, 0};
  std::map<std::string, std::array<double, 2>> counts;
  double totals[2] = {0.0, 0.0};
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const int c = labels[d] == Label::Satire ? 1 : 0;
    ++docs[c];
    for (const auto& w : documents[d]) {
      counts[w][static_cast<std::size_t>(c)] += 1.0;
      totals[c] += 1.0;
    }
  }
  if (docs[0] == 0 || docs[1] == 0) throw ValidationError("train_mnb: both classes must be present");
  if (counts.empty()) throw ValidationError("train_mnb: empty vocabulary");

  MnbModel m;
  m.alpha = alpha;
  const double n = static_cast<double>(documents.size());
  const double v = static_cast<double>(counts.size());
  for (int c = 0; c < 2; ++c) {
    m.log_prior[c] = std::log(static_cast<double>(docs[c]) / n);
    m.log_likelihood[c].reserve(counts.size());
  }
  for (const auto& [word, cnt] : counts) {
    m.index.emplace(word, m.vocabulary.size());
    m.vocabulary.push_back(word);
    for (int c = 0; c < 2; ++c) {
      m.log_likelihood[c].push_back(std::log((cnt[static_cast<std::size_t>(c)] + alpha) / (totals[c] + alpha * v)));
    }
  }
  return m;
}

MnbPosterior mnb_posterior(const MnbModel& model, const std::vector<std::string>& tokens) {
  MnbPosterior p;
  for (int c = 0; c < 2; ++c) p.log_joint[c] = model.log_prior[c];
  for (const auto& w : tokens) {
    const auto it = model.index.find(w);
    if (it == model.index.end()) continue;
    for (int c = 0; c < 2; ++c) p.log_joint[c] += model.log_likelihood[c][it->second];
  }
  const double hi = std::max(p.log_joint[0], p.log_joint[1]);
  const double lse = hi + std::log(std::exp(p.log_joint[0] - hi) + std::exp(p.log_joint[1] - hi));
  for (int c = 0; c < 2; ++c) p.log_posterior[c] = p.log_joint[c] - lse;
  p.p_satire = std::exp(p.log_posterior[1]);
  if (p.log_joint[1] > p.log_joint[0]) {
    p.label = Label::Satire;
  } else if (p.log_joint[1] < p.log_joint[0]) {
    p.label = Label::Fake;
  } else {
    p.label = model.log_prior[1] > model.log_prior[0] ? Label::Satire : Label::Fake;
  }
  return p;
}

}  // namespace satfake::classify
