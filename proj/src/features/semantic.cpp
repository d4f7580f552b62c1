#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "satfake/features.hpp"
#include "satfake/util/text.hpp"

namespace satfake::features {

namespace {

using Vec = std::vector<double>;

// Mean embedding of the selected tokens; nullopt when none is in the space.
std::optional<Vec> sentence_vector(const textproc::Sentence& s, const corpus::EmbeddingSpace& space, bool verbs_only) {
  Vec sum(space.dim(), 0.0);
  std::size_t n = 0;
  for (const auto& t : s.tokens) {
    if (!t.is_content_word) continue;
    if (verbs_only && !is_verb(t)) continue;
    const double* v = space.find(util::to_lower(t.surface));
    if (!v) v = space.find(t.lemma);
    if (!v) continue;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[k];
    ++n;
  }
  if (n == 0) return std::nullopt;
  for (auto& x : sum) x /= static_cast<double>(n);
  if (std::all_of(sum.begin(), sum.end(), [](double x) { return x == 0.0; })) return std::nullopt;
  return sum;
}

}  // namespace

double cosine(const Vec& a, const Vec& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

IndexValue lsa_overlap(const AnalyzedDoc& doc, const corpus::EmbeddingSpace& space, LsaMode mode) {
  const bool verbs_only = mode == LsaMode::Verbs;
  std::vector<std::optional<Vec>> vecs;
  vecs.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) vecs.push_back(sentence_vector(s, space, verbs_only));

  double total = 0.0;
  std::size_t units = 0;
  for (const auto& p : doc.paragraphs) {
    if (mode == LsaMode::AllSentencesInParagraph) {
      double sum = 0.0;
      std::size_t pairs = 0;
      for (std::size_t i = p.first; i < p.last; ++i) {
        for (std::size_t j = i + 1; j < p.last; ++j) {
          if (!vecs[i] || !vecs[j]) continue;
          sum += cosine(*vecs[i], *vecs[j]);
          ++pairs;
        }
      }
      if (pairs > 0) {
        total += sum / static_cast<double>(pairs);
        ++units;
      }
    } else {
      for (std::size_t i = p.first; i + 1 < p.last; ++i) {
        if (!vecs[i] || !vecs[i + 1]) continue;
        total += cosine(*vecs[i], *vecs[i + 1]);
        ++units;
      }
    }
  }
  if (units == 0) return {0.0, true};
  return {std::clamp(total / static_cast<double>(units), -1.0, 1.0), false};
}

IndexValue givenness(const AnalyzedDoc& doc, const corpus::EmbeddingSpace& space) {
  Vec prior(space.dim(), 0.0);
  bool have_prior = false;
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& s : doc.sentences) {
    const auto v = sentence_vector(s, space, false);
    if (!v) continue;
    // the sum and the mean of earlier vectors have the same direction
    if (have_prior) {
      total += cosine(*v, prior);
      ++n;
    }
    for (std::size_t k = 0; k < prior.size(); ++k) prior[k] += (*v)[k];
    have_prior = true;
  }
  if (n == 0) return {0.0, true};
  return {std::clamp(total / static_cast<double>(n), -1.0, 1.0), false};
}

IndexValue content_word_overlap(const AnalyzedDoc& doc) {
  auto lemmas = [](const textproc::Sentence& s) {
    std::unordered_set<std::string> out;
    for (const auto& t : s.tokens) {
      if (t.is_content_word) out.insert(t.lemma);
    }
    return out;
  };
  auto shared = [](const textproc::Sentence& s, const std::unordered_set<std::string>& other, std::size_t& total) {
    std::size_t hits = 0;
    for (const auto& t : s.tokens) {
      if (!t.is_content_word) continue;
      ++total;
      hits += other.contains(t.lemma) ? 1 : 0;
    }
    return hits;
  };

  double sum = 0.0;
  std::size_t pairs = 0;
  for (const auto& p : doc.paragraphs) {
    for (std::size_t i = p.first; i + 1 < p.last; ++i) {
      const auto& a = doc.sentences[i];
      const auto& b = doc.sentences[i + 1];
      std::size_t total = 0;
      const std::size_t hits = shared(a, lemmas(b), total) + shared(b, lemmas(a), total);
      if (total == 0) continue;
      sum += static_cast<double>(hits) / static_cast<double>(total);
      ++pairs;
    }
  }
  if (pairs == 0) return {0.0, true};
  return {sum / static_cast<double>(pairs), false};
}

}  // namespace satfake::features
