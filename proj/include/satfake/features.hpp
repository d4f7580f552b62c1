#pragma once

// Coherence, readability and lexical indices computed over an analyzed
// document, and the catalog-driven extraction of one feature row per article.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <unordered_set>
#include <string>
#include <vector>

#include "satfake/corpus.hpp"
#include "satfake/feature_matrix.hpp"
#include "satfake/textproc.hpp"

namespace satfake::features {

using textproc::AnalyzedDoc;
using textproc::Token;

/// A computed index. `defaulted` marks values that were undefined for the
/// document and replaced by the index's documented default.
struct IndexValue {
  double value = 0.0;
  bool defaulted = false;
};

// --- incidence-style indices (per 1000 words) ----------------------------------

using TokenPredicate = std::function<bool(const Token&)>;

/// 1000 * matching tokens / word tokens. Throws EmptyDocumentError when the
/// document has no word tokens.
double incidence(const AnalyzedDoc& doc, const TokenPredicate& predicate);

bool is_first_person_singular(const Token& t);  // I me my mine myself
bool is_third_person_singular(const Token& t);  // he she it and their case forms
bool is_gerund(const Token& t);                 // VBG
bool is_adverb(const Token& t);                 // RB RBR RBS
bool is_verb(const Token& t);                   // VB*

/// Phrase occurrences per 1000 words. At each position the longest matching
/// phrase is counted once and matching resumes after it.
double connective_incidence(const AnalyzedDoc& doc, const std::vector<std::vector<std::string>>& phrases);

/// Number of words (tokens with a letter or digit). Throws on zero.
std::size_t checked_word_count(const AnalyzedDoc& doc);

// --- surface statistics ----------------------------------------------------------

struct SurfaceStats {
  double sentence_count = 0.0;
  double mean_sentence_length = 0.0;  // words per sentence
  double mean_word_length = 0.0;      // letters per word, alphabetic characters only
};

SurfaceStats surface_stats(const AnalyzedDoc& doc);

/// Type-token ratio over lowercase lemmas of word tokens.
double lexical_diversity(const AnalyzedDoc& doc);

// --- lexicon lookups ----------------------------------------------------------------

/// log10(0.5): the per-million frequency assigned to out-of-vocabulary words.
inline constexpr double kLogFrequencyFloor = -0.30102999566398120;

struct FrequencyStats {
  double all_words = kLogFrequencyFloor;
  IndexValue content_words{kLogFrequencyFloor, true};
};

/// Mean log10 occurrences per million; lookups use the lowercase surface form
/// and fall back on the lemma.
FrequencyStats word_frequency_stats(const AnalyzedDoc& doc, const corpus::FrequencyTable& table);

struct CoveredMean {
  IndexValue mean;
  double coverage = 0.0;  // share of candidate tokens found in the table
};

/// Mean rating over content-word lemmas present in the norms; scale midpoint
/// when none are covered.
CoveredMean concreteness_mean(const AnalyzedDoc& doc, const corpus::ConcretenessNorms& norms);

/// Mean depth over common-noun lemmas (NN, NNS) present in the table; the
/// table-wide mean when none are covered.
CoveredMean hypernymy_nouns(const AnalyzedDoc& doc, const corpus::HypernymDepths& depths);

// --- syntax approximations ------------------------------------------------------------

/// A form of "be", optional adverbs, then VBN, with no "by" in the rest of
/// the sentence. Returns matches per 1000 words.
double passive_density(const AnalyzedDoc& doc);
std::size_t agentless_passives(const AnalyzedDoc& doc);

/// Maximal runs of verb tags (VB*, MD). Adverbs between an auxiliary and a
/// following verb stay inside the run.
std::size_t verb_groups(const AnalyzedDoc& doc);
double verb_phrase_density(const AnalyzedDoc& doc);

/// (causal particles + 1) / (causal verbs + 1).
double causal_ratio(const AnalyzedDoc& doc, const std::unordered_set<std::string>& particles,
                    const std::unordered_set<std::string>& causal_verbs);

// --- semantic overlap ----------------------------------------------------------------------

enum class LsaMode { AdjacentSentences, AllSentencesInParagraph, Verbs };

/// Mean cosine between sentence vectors. A sentence vector is the mean
/// embedding of its content words (verbs mode: non-auxiliary verbs only).
/// Adjacent pairs are consecutive sentences in the same paragraph; paragraph
/// mode averages all pairs inside each paragraph and then over paragraphs.
/// Sentences without any known word are left out of every pair. Fewer than
/// one usable pair gives 0, flagged.
IndexValue lsa_overlap(const AnalyzedDoc& doc, const corpus::EmbeddingSpace& space, LsaMode mode);

/// Mean over sentences i >= 2 of cosine(sentence i, mean of sentences before i).
IndexValue givenness(const AnalyzedDoc& doc, const corpus::EmbeddingSpace& space);

/// For each adjacent pair in a paragraph: content-word tokens of either
/// sentence whose lemma occurs in the other sentence, over all content-word
/// tokens of the pair. Averaged over pairs.
IndexValue content_word_overlap(const AnalyzedDoc& doc);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// --- readability -------------------------------------------------------------------------------

struct ReadabilityCoefficients {
  double intercept = 0.0;
  double content_word_overlap = 0.0;
  double syntactic_similarity = 0.0;
  double content_word_frequency = 0.0;
};

/// Flat "key = value" file with keys l2_intercept, l2_content_word_overlap,
/// l2_syntactic_similarity and l2_content_word_frequency.
ReadabilityCoefficients load_readability_coefficients(const std::filesystem::path& path);

/// 1 / (1 + mean |z|) of sentence lengths, population SD; 1 when every
/// sentence has the same length.
double syntactic_similarity(const AnalyzedDoc& doc);

struct Readability {
  double flesch_reading_ease = 0.0;
  double flesch_kincaid_grade = 0.0;
  IndexValue l2;
};

Readability readability(const AnalyzedDoc& doc, const corpus::FrequencyTable& table,
                        const ReadabilityCoefficients& coef);

// --- catalog and extraction -------------------------------------------------------------------------

struct Constituent {
  std::string name;
  double sign = 1.0;
};

struct IndexDescriptor {
  std::string name;
  std::string description;
  bool composite = false;
  std::vector<std::string> resources;
  std::string default_rule;  // "-" when the index is always defined
  std::string scale;
  bool duplication_invariant = false;
  std::vector<Constituent> constituents;  // composites only
};

struct IndexCatalog {
  int version = 0;
  std::vector<IndexDescriptor> indices;

  const IndexDescriptor* find(const std::string& name) const;
  std::vector<std::string> names() const;
};

/// Tab-separated catalog; see resources/config/catalog.tsv.
IndexCatalog load_catalog(const std::filesystem::path& path);
IndexCatalog parse_catalog(std::string_view data);

/// Names of every primitive index the extractor can compute.
const std::vector<std::string>& primitive_index_names();

/// Every primitive index of one document.
std::map<std::string, IndexValue> compute_indices(const AnalyzedDoc& doc, const corpus::ResourceBundle& res,
                                                  const ReadabilityCoefficients& coef);

struct FeatureVector {
  std::string article_id;
  std::vector<double> values;  // catalog order; composites hold NaN until the matrix is assembled
  std::vector<std::uint8_t> flags;
};

/// Analyzes headline + body and evaluates every catalog entry.
FeatureVector extract_features(const corpus::Article& article, const corpus::ResourceBundle& res,
                               const IndexCatalog& catalog, const ReadabilityCoefficients& coef);

/// Fills composite columns with the mean corpus z-score of their signed
/// constituents (sample SD; a constant constituent contributes 0).
void easability_composites(FeatureMatrix& matrix, const IndexCatalog& catalog);

/// Extracts every article and fills composites. Errors name the article id.
FeatureMatrix extract_matrix(const std::vector<corpus::Article>& articles, const corpus::ResourceBundle& res,
                             const IndexCatalog& catalog, const ReadabilityCoefficients& coef);

}  // namespace satfake::features
