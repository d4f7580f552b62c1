#pragma once

// Labeled article corpus, lexical resources and the feature-table file format.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "satfake/feature_matrix.hpp"
#include "satfake/textproc.hpp"

namespace satfake::corpus {

enum class Label { Fake, Satire };

/// "fake" / "satire", the spelling used in every file format.
std::string_view label_name(Label label);

/// Case-insensitive; accepts "fake", "fake news" and "satire".
std::optional<Label> parse_label(std::string_view text);

struct Article {
  std::string id;
  Label label = Label::Fake;
  std::string headline;
  std::string body;
  std::optional<std::string> source;

  bool operator==(const Article&) const = default;
};

/// Headline and body joined by a paragraph break; the body alone when the
/// headline is empty.
std::string full_text(const Article& article);

struct Rejection {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct Corpus {
  std::vector<Article> articles;
  std::size_t fake = 0;
  std::size_t satire = 0;
  std::vector<Rejection> rejections;

  std::size_t count(Label label) const { return label == Label::Fake ? fake : satire; }
  std::size_t size() const { return articles.size(); }
};

/// One JSON object per line with keys id, label, headline, body and optional
/// source. Bad records are collected in `rejections`; a duplicate id throws
/// ValidationError and a missing file throws IoError.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::string_view data);

std::string serialize_corpus(const std::vector<Article>& articles);
void write_corpus(const std::vector<Article>& articles, const std::filesystem::path& path);

// --- raw dataset conversion -----------------------------------------------------

struct IngestResult {
  std::vector<Article> articles;
  std::vector<std::pair<std::string, std::string>> rejected;  // relative path, reason
  std::size_t fake = 0;
  std::size_t satire = 0;
};

/// Walks `raw_dir` for *.txt files. The label comes from the nearest
/// enclosing directory whose name starts with "fake" or "satire"; the first
/// non-blank line is the headline and the rest the body. Files are visited
/// in lexicographic path order, so output is stable.
IngestResult ingest_directory(const std::filesystem::path& raw_dir);

// --- resources --------------------------------------------------------------------

struct LoadStats {
  std::size_t entries = 0;
  std::size_t skipped = 0;  // malformed lines
};

struct FrequencyTable {
  std::unordered_map<std::string, double> counts;
  double total = 0.0;

  /// Occurrences per million tokens, or nullopt when the word is absent.
  std::optional<double> per_million(const std::string& word) const;
};

struct ConcretenessNorms {
  std::unordered_map<std::string, double> ratings;
  double scale_min = 1.0;
  double scale_max = 5.0;

  double midpoint() const { return 0.5 * (scale_min + scale_max); }
};

struct HypernymDepths {
  std::unordered_map<std::string, double> depths;
  double mean = 0.0;
};

enum class Connective { Causal, Intentional, TemporalExpanded, Additive, Adversative };
inline constexpr std::size_t kConnectiveCategories = 5;

std::string_view connective_name(Connective c);
std::optional<Connective> parse_connective(std::string_view name);

/// Phrases are stored as lowercase token sequences so that multi-word
/// connectives ("as a result") match against tokenized text.
struct ConnectiveLexicon {
  std::map<Connective, std::vector<std::vector<std::string>>> phrases;
};

class EmbeddingSpace {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  /// Pointer to dim() values, or nullptr.
  const double* find(const std::string& word) const;

  void add(const std::string& word, std::vector<double> vec);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

struct ResourceReport {
  std::string name;
  std::filesystem::path path;
  LoadStats stats;
};

struct ResourceBundle {
  FrequencyTable frequency;
  ConcretenessNorms concreteness;
  HypernymDepths hypernyms;
  ConnectiveLexicon connectives;
  std::unordered_set<std::string> causal_verbs;
  std::unordered_set<std::string> causal_particles;
  EmbeddingSpace embeddings;
  textproc::PerceptronTagger tagger;
  textproc::Lemmatizer lemmatizer;
  std::vector<ResourceReport> report;
};

// Individual loaders. Malformed lines are skipped and counted; a missing file
// throws IoError naming the resource; invariant violations throw
// ValidationError.
FrequencyTable load_frequency_table(const std::filesystem::path& path, LoadStats* stats = nullptr);
ConcretenessNorms load_concreteness(const std::filesystem::path& path, LoadStats* stats = nullptr);
HypernymDepths load_hypernym_depths(const std::filesystem::path& path, LoadStats* stats = nullptr);
ConnectiveLexicon load_connectives(const std::filesystem::path& path, LoadStats* stats = nullptr);
std::unordered_set<std::string> load_word_set(const std::filesystem::path& path, std::string_view what,
                                              LoadStats* stats = nullptr);
EmbeddingSpace load_embeddings(const std::filesystem::path& path, LoadStats* stats = nullptr);

/// Flat "key = path" file. Relative paths resolve against the manifest's
/// directory. Required keys: frequency, concreteness, hypernyms, connectives,
/// causal_verbs, causal_particles, embeddings, tagger, lemma_exceptions.
std::map<std::string, std::filesystem::path> read_manifest(const std::filesystem::path& path);

ResourceBundle load_resources(const std::filesystem::path& manifest);

// --- feature tables -----------------------------------------------------------------

/// CSV with header "articleId,<columns...>"; NaN is written as NA. Values use
/// the shortest representation that round-trips exactly.
std::string serialize_features(const FeatureMatrix& matrix);
FeatureMatrix parse_features(std::string_view data);
void write_features(const FeatureMatrix& matrix, const std::filesystem::path& path);
FeatureMatrix read_features(const std::filesystem::path& path);

/// Companion table of 0/1 flags (1 = value was undefined and defaulted).
void write_flags(const FeatureMatrix& matrix, const std::filesystem::path& path);

}  // namespace satfake::corpus
