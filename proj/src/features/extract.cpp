#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/features.hpp"

namespace satfake::features {

std::map<std::string, IndexValue> compute_indices(const AnalyzedDoc& doc, const corpus::ResourceBundle& res,
                                                  const ReadabilityCoefficients& coef) {
  using corpus::Connective;
  std::map<std::string, IndexValue> out;
  auto put = [&](const char* name, double v) { out[name] = {v, false}; };

  const auto surface = surface_stats(doc);
  put("word_count", static_cast<double>(doc.word_count()));
  put("sentence_count", surface.sentence_count);
  put("mean_sentence_length", surface.mean_sentence_length);
  put("mean_word_length", surface.mean_word_length);
  put("lexical_diversity", lexical_diversity(doc));

  put("first_person_singular_incidence", incidence(doc, is_first_person_singular));
  put("third_person_singular_incidence", incidence(doc, is_third_person_singular));
  put("gerund_incidence", incidence(doc, is_gerund));
  put("adverb_incidence", incidence(doc, is_adverb));
  put("verb_incidence", incidence(doc, is_verb));
  put("verb_phrase_density", verb_phrase_density(doc));
  put("agentless_passive_density", passive_density(doc));

  const auto& phrases = res.connectives.phrases;
  auto category = [&](Connective c) {
    const auto it = phrases.find(c);
    return it == phrases.end() ? std::vector<std::vector<std::string>>{} : it->second;
  };
  auto causal_intentional = category(Connective::Causal);
  const auto intentional = category(Connective::Intentional);
  causal_intentional.insert(causal_intentional.end(), intentional.begin(), intentional.end());
  put("causal_intentional_connectives", connective_incidence(doc, causal_intentional));
  put("temporal_expanded_connectives", connective_incidence(doc, category(Connective::TemporalExpanded)));
  put("additive_connectives", connective_incidence(doc, category(Connective::Additive)));
  put("adversative_connectives", connective_incidence(doc, category(Connective::Adversative)));
  put("causal_particle_verb_ratio", causal_ratio(doc, res.causal_particles, res.causal_verbs));

  const auto freq = word_frequency_stats(doc, res.frequency);
  put("word_freq_all", freq.all_words);
  out["word_freq_content"] = freq.content_words;
  out["concreteness"] = concreteness_mean(doc, res.concreteness).mean;
  out["hypernymy_nouns"] = hypernymy_nouns(doc, res.hypernyms).mean;

  out["content_word_overlap_adjacent"] = content_word_overlap(doc);
  out["lsa_adjacent"] = lsa_overlap(doc, res.embeddings, LsaMode::AdjacentSentences);
  out["lsa_paragraph"] = lsa_overlap(doc, res.embeddings, LsaMode::AllSentencesInParagraph);
  out["lsa_verbs"] = lsa_overlap(doc, res.embeddings, LsaMode::Verbs);
  out["givenness"] = givenness(doc, res.embeddings);

  const auto read = readability(doc, res.frequency, coef);
  put("flesch_reading_ease", read.flesch_reading_ease);
  put("flesch_kincaid_grade", read.flesch_kincaid_grade);
  out["l2_readability"] = read.l2;
  return out;
}

FeatureVector extract_features(const corpus::Article& article, const corpus::ResourceBundle& res,
                               const IndexCatalog& catalog, const ReadabilityCoefficients& coef) {
  if (article.body.empty()) throw EmptyDocumentError(fmt::format("article {}: empty body", article.id));
  const auto doc = textproc::analyze(corpus::full_text(article), res.tagger, res.lemmatizer);
  std::map<std::string, IndexValue> values;
  try {
    values = compute_indices(doc, res, coef);
  } catch (const EmptyDocumentError& e) {
    throw EmptyDocumentError(fmt::format("article {}: {}", article.id, e.what()));
  }
  FeatureVector fv;
  fv.article_id = article.id;
  for (const auto& d : catalog.indices) {
    if (d.composite) {
      fv.values.push_back(std::numeric_limits<double>::quiet_NaN());
      fv.flags.push_back(0);
      continue;
    }
    const auto& v = values.at(d.name);
    fv.values.push_back(v.value);
    fv.flags.push_back(v.defaulted ? 1 : 0);
  }
  return fv;
}

void easability_composites(FeatureMatrix& m, const IndexCatalog& catalog) {
  const Eigen::Index n = m.rows();
  for (const auto& d : catalog.indices) {
    if (!d.composite) continue;
    const Eigen::Index target = m.column(d.name);
    if (target < 0) throw ConfigError(fmt::format("feature matrix lacks composite column '{}'", d.name));
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    for (const auto& c : d.constituents) {
      const Eigen::Index j = m.column(c.name);
      if (j < 0) throw ConfigError(fmt::format("composite '{}' needs missing column '{}'", d.name, c.name));
      const Eigen::VectorXd col = m.values.col(j);
      const double mean = n > 0 ? col.mean() : 0.0;
      const double sd = n > 1 ? std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n - 1)) : 0.0;
      if (sd > 0.0) sum += c.sign * (col.array() - mean).matrix() / sd;
    }
    m.values.col(target) = sum / static_cast<double>(d.constituents.size());
  }
}

FeatureMatrix extract_matrix(const std::vector<corpus::Article>& articles, const corpus::ResourceBundle& res,
                             const IndexCatalog& catalog, const ReadabilityCoefficients& coef) {
  FeatureMatrix m;
  m.column_names = catalog.names();
  const auto n = static_cast<Eigen::Index>(articles.size());
  const auto p = static_cast<Eigen::Index>(catalog.indices.size());
  m.values.resize(n, p);
  m.flags.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& a = articles[static_cast<std::size_t>(i)];
    const auto fv = extract_features(a, res, catalog, coef);
    m.row_ids.push_back(a.id);
    for (Eigen::Index j = 0; j < p; ++j) {
      m.values(i, j) = fv.values[static_cast<std::size_t>(j)];
      m.flags(i, j) = fv.flags[static_cast<std::size_t>(j)];
    }
  }
  easability_composites(m, catalog);
  return m;
}

}  // namespace satfake::features
