#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "satfake/error.hpp"
#include "satfake/features.hpp"
#include "satfake/util/text.hpp"

namespace satfake::features {

using textproc::is_word;

namespace {

bool any_of_words(const Token& t, std::initializer_list<std::string_view> words) {
  const std::string lower = util::to_lower(t.surface);
  return std::find(words.begin(), words.end(), lower) != words.end();
}

bool is_auxiliary(const Token& t) { return t.pos == "MD" || (is_verb(t) && textproc::is_auxiliary_lemma(t.lemma)); }

bool is_verbal(const Token& t) { return is_verb(t) || t.pos == "MD"; }

// Lowercase surface first, then lemma.
template <typename Map>
auto lookup(const Map& map, const Token& t, bool lemma_first) -> const typename Map::mapped_type* {
  const std::string lower = util::to_lower(t.surface);
  const std::string& first = lemma_first ? t.lemma : lower;
  const std::string& second = lemma_first ? lower : t.lemma;
  if (const auto it = map.find(first); it != map.end()) return &it->second;
  if (const auto it = map.find(second); it != map.end()) return &it->second;
  return nullptr;
}

double mean(double sum, std::size_t n) { return sum / static_cast<double>(n); }

}  // namespace

bool is_first_person_singular(const Token& t) { return any_of_words(t, {"i", "me", "my", "mine", "myself"}); }

bool is_third_person_singular(const Token& t) {
  return any_of_words(t, {"he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself"});
}

bool is_gerund(const Token& t) { return t.pos == "VBG"; }

bool is_adverb(const Token& t) { return textproc::is_adverb_tag(t.pos); }

bool is_verb(const Token& t) { return textproc::is_verb_tag(t.pos); }

std::size_t checked_word_count(const AnalyzedDoc& doc) {
  const std::size_t n = doc.word_count();
  if (n == 0) throw EmptyDocumentError("document has no words");
  return n;
}

double incidence(const AnalyzedDoc& doc, const TokenPredicate& predicate) {
  const std::size_t words = checked_word_count(doc);
  std::size_t hits = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) hits += predicate(t) ? 1 : 0;
  }
  return 1000.0 * static_cast<double>(hits) / static_cast<double>(words);
}

double connective_incidence(const AnalyzedDoc& doc, const std::vector<std::vector<std::string>>& phrases) {
  const std::size_t words = checked_word_count(doc);
  std::size_t hits = 0;
  for (const auto& s : doc.sentences) {
    std::vector<std::string> lower;
    lower.reserve(s.tokens.size());
    for (const auto& t : s.tokens) lower.push_back(util::to_lower(t.surface));
    std::size_t i = 0;
    while (i < lower.size()) {
      std::size_t best = 0;
      for (const auto& p : phrases) {
        if (p.size() <= best || i + p.size() > lower.size()) continue;
        if (std::equal(p.begin(), p.end(), lower.begin() + static_cast<std::ptrdiff_t>(i))) best = p.size();
      }
      if (best > 0) {
        ++hits;
        i += best;
      } else {
        ++i;
      }
    }
  }
  return 1000.0 * static_cast<double>(hits) / static_cast<double>(words);
}

SurfaceStats surface_stats(const AnalyzedDoc& doc) {
  const std::size_t words = checked_word_count(doc);
  std::size_t letters = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!is_word(t.surface)) continue;
      for (const char c : t.surface) letters += std::isalpha(static_cast<unsigned char>(c)) ? 1 : 0;
    }
  }
  SurfaceStats st;
  st.sentence_count = static_cast<double>(doc.sentences.size());
  st.mean_sentence_length = mean(static_cast<double>(words), doc.sentences.size());
  st.mean_word_length = mean(static_cast<double>(letters), words);
  return st;
}

double lexical_diversity(const AnalyzedDoc& doc) {
  const std::size_t words = checked_word_count(doc);
  std::unordered_set<std::string> types;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (is_word(t.surface)) types.insert(util::to_lower(t.lemma));
    }
  }
  return mean(static_cast<double>(types.size()), words);
}

FrequencyStats word_frequency_stats(const AnalyzedDoc& doc, const corpus::FrequencyTable& table) {
  double sum_all = 0.0;
  double sum_content = 0.0;
  std::size_t n_all = 0;
  std::size_t n_content = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!is_word(t.surface)) continue;
      const double* count = lookup(table.counts, t, false);
      const double lf = count ? std::log10(*count / table.total * 1e6) : kLogFrequencyFloor;
      sum_all += lf;
      ++n_all;
      if (t.is_content_word) {
        sum_content += lf;
        ++n_content;
      }
    }
  }
  FrequencyStats out;
  if (n_all > 0) out.all_words = mean(sum_all, n_all);
  if (n_content > 0) out.content_words = {mean(sum_content, n_content), false};
  return out;
}

CoveredMean concreteness_mean(const AnalyzedDoc& doc, const corpus::ConcretenessNorms& norms) {
  double sum = 0.0;
  std::size_t covered = 0;
  std::size_t candidates = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!t.is_content_word) continue;
      ++candidates;
      if (const double* r = lookup(norms.ratings, t, true)) {
        sum += *r;
        ++covered;
      }
    }
  }
  CoveredMean out;
  out.coverage = candidates ? mean(static_cast<double>(covered), candidates) : 0.0;
  out.mean = covered ? IndexValue{mean(sum, covered), false} : IndexValue{norms.midpoint(), true};
  return out;
}

CoveredMean hypernymy_nouns(const AnalyzedDoc& doc, const corpus::HypernymDepths& depths) {
  double sum = 0.0;
  std::size_t covered = 0;
  std::size_t candidates = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (t.pos != "NN" && t.pos != "NNS") continue;
      ++candidates;
      if (const double* d = lookup(depths.depths, t, true)) {
        sum += *d;
        ++covered;
      }
    }
  }
  CoveredMean out;
  out.coverage = candidates ? mean(static_cast<double>(covered), candidates) : 0.0;
  out.mean = covered ? IndexValue{mean(sum, covered), false} : IndexValue{depths.mean, true};
  return out;
}

std::size_t agentless_passives(const AnalyzedDoc& doc) {
  std::size_t hits = 0;
  for (const auto& s : doc.sentences) {
    const auto& tk = s.tokens;
    for (std::size_t i = 0; i < tk.size(); ++i) {
      if (!is_verb(tk[i]) || tk[i].lemma != "be") continue;
      std::size_t j = i + 1;
      while (j < tk.size() && is_adverb(tk[j])) ++j;
      if (j >= tk.size() || tk[j].pos != "VBN") continue;
      const bool agent = std::any_of(tk.begin() + static_cast<std::ptrdiff_t>(j) + 1, tk.end(),
                                     [](const Token& t) { return util::to_lower(t.surface) == "by"; });
      if (!agent) ++hits;
    }
  }
  return hits;
}

double passive_density(const AnalyzedDoc& doc) {
  const std::size_t words = checked_word_count(doc);
  return 1000.0 * static_cast<double>(agentless_passives(doc)) / static_cast<double>(words);
}

std::size_t verb_groups(const AnalyzedDoc& doc) {
  std::size_t groups = 0;
  for (const auto& s : doc.sentences) {
    const auto& tk = s.tokens;
    std::size_t i = 0;
    while (i < tk.size()) {
      if (!is_verbal(tk[i])) {
        ++i;
        continue;
      }
      ++groups;
      bool last_aux = is_auxiliary(tk[i]);
      std::size_t j = i + 1;
      while (true) {
        if (j < tk.size() && is_verbal(tk[j])) {
          last_aux = is_auxiliary(tk[j]);
          ++j;
          continue;
        }
        if (last_aux) {
          std::size_t k = j;
          while (k < tk.size() && is_adverb(tk[k])) ++k;
          if (k > j && k < tk.size() && is_verbal(tk[k])) {
            j = k;
            continue;
          }
        }
        break;
      }
      i = j;
    }
  }
  return groups;
}

double verb_phrase_density(const AnalyzedDoc& doc) {
  const std::size_t words = checked_word_count(doc);
  return 1000.0 * static_cast<double>(verb_groups(doc)) / static_cast<double>(words);
}

double causal_ratio(const AnalyzedDoc& doc, const std::unordered_set<std::string>& particles,
                    const std::unordered_set<std::string>& causal_verbs) {
  std::size_t p = 0;
  std::size_t v = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (particles.contains(util::to_lower(t.surface))) ++p;
      if (is_verb(t) && causal_verbs.contains(t.lemma)) ++v;
    }
  }
  return (static_cast<double>(p) + 1.0) / (static_cast<double>(v) + 1.0);
}

}  // namespace satfake::features
