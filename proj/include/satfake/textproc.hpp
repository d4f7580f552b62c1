#pragma once

// Sentence segmentation, tokenization, part-of-speech tagging, lemmatization
// and syllable counting. Every function here is pure given its inputs; the
// tagger and lemmatizer are immutable once loaded and may be shared across
// threads.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace satfake::textproc {

/// Half-open byte range [begin, end) into the analyzed text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct RawToken {
  std::string surface;
  Span span;
};

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;  // Penn Treebank tag
  Span span;
  bool is_content_word = false;
};

struct Sentence {
  Span span;
  std::size_t paragraph = 0;
  std::vector<Token> tokens;
};

/// Inclusive-exclusive range of sentence indices belonging to one paragraph.
struct ParagraphRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct AnalyzedDoc {
  std::string text;
  std::vector<Sentence> sentences;
  std::vector<ParagraphRange> paragraphs;

  std::size_t token_count() const;
  std::size_t word_count() const;
};

// --- tag families -----------------------------------------------------------

bool is_noun_tag(std::string_view tag);       // NN NNS NNP NNPS
bool is_verb_tag(std::string_view tag);       // VB VBD VBG VBN VBP VBZ
bool is_adjective_tag(std::string_view tag);  // JJ JJR JJS
bool is_adverb_tag(std::string_view tag);     // RB RBR RBS
bool is_auxiliary_lemma(std::string_view lemma);  // be, have, do

/// A word token carries at least one letter or digit; punctuation is excluded
/// from every per-word denominator.
bool is_word(std::string_view surface);

bool is_content(std::string_view tag, std::string_view lemma);

// --- segmentation and tokenization ------------------------------------------

/// Sentence spans in document order. Paragraphs are separated by blank lines
/// and a sentence never crosses a paragraph boundary. A sentence ends after
/// '.', '!', '?' or an ellipsis (plus any closing quotes or brackets) when
/// the next token starts a new sentence; periods belonging to known
/// abbreviations, initials and dotted acronyms stay inside their word.
std::vector<Span> segment_sentences(std::string_view text);

/// Same as segment_sentences, also returning the paragraph index of each span.
struct Segmentation {
  std::vector<Span> sentences;
  std::vector<std::size_t> paragraph_of;
};
Segmentation segment(std::string_view text);

/// Penn-style tokens of text[span]. Punctuation is split from words and
/// clitics are split off ("don't" -> "do" "n't", "it's" -> "it" "'s").
/// Every non-whitespace byte of the span belongs to exactly one token.
std::vector<RawToken> tokenize(Span span, std::string_view text);

bool is_abbreviation(std::string_view word_without_period);

// --- tagging -------------------------------------------------------------------

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

/// Greedy left-to-right averaged perceptron tagger.
class PerceptronTagger {
 public:
  struct TrainOptions {
    int iterations = 5;
    std::uint64_t seed = 1;
    int tagdict_min_count = 20;
    double tagdict_min_ratio = 0.97;
    double prune_below = 0.0;  // drop averaged weights with |w| below this
  };

  PerceptronTagger() = default;

  static PerceptronTagger train(std::span<const TaggedSentence> corpus, const TrainOptions& opts);
  static PerceptronTagger load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Exactly one tag per word; unknown words fall back on suffix and shape
  /// features, so tagging never fails.
  std::vector<std::string> tag(std::span<const std::string> words) const;

  bool empty() const { return classes_.empty(); }
  std::size_t feature_count() const { return weights_.size(); }
  const std::vector<std::string>& classes() const { return classes_; }

 private:
  struct Weight {
    std::uint32_t cls;
    double value;
  };

  std::vector<std::string> classes_;
  std::unordered_map<std::string, std::uint32_t> tagdict_;
  std::unordered_map<std::string, std::vector<Weight>> weights_;

  std::uint32_t predict(const std::vector<std::string>& features) const;
};

std::vector<std::string> pos_tag(std::span<const std::string> words, const PerceptronTagger& model);

/// Reads word/TAG corpora, one sentence per line. Quote tokens `` and '' and
/// their tags become ".
std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path);

double tagging_accuracy(const PerceptronTagger& model, std::span<const TaggedSentence> gold);

// --- lemmatization -------------------------------------------------------------

/// Exception table plus suffix rules. When a vocabulary is supplied the first
/// rule whose output is a known word wins; otherwise the first applicable
/// rule is taken. Output is always lowercase and never empty.
class Lemmatizer {
 public:
  Lemmatizer() = default;

  /// Lines of "form<TAB>class<TAB>lemma", class one of n v a r.
  static Lemmatizer load(const std::filesystem::path& exceptions);

  void add_exception(std::string form, char word_class, std::string lemma);
  void set_vocabulary(std::unordered_set<std::string> known) { vocabulary_ = std::move(known); }
  std::size_t exception_count() const { return exceptions_.size(); }

  std::string lemmatize(std::string_view surface, std::string_view pos) const;

 private:
  std::unordered_map<std::string, std::string> exceptions_;  // key: class + ':' + form
  std::unordered_set<std::string> vocabulary_;

  bool known(const std::string& word) const;
};

// --- syllables -----------------------------------------------------------------

/// Vowel-group count with a silent final 'e' rule; at least 1. Words without
/// letters count as one syllable.
int count_syllables(std::string_view word);

// --- whole-document analysis ---------------------------------------------------

AnalyzedDoc analyze(std::string text, const PerceptronTagger& tagger, const Lemmatizer& lemmatizer);

/// Build an AnalyzedDoc from pre-tagged sentences. Paragraph ids give the
/// paragraph of each sentence. Used by tests that need exact control of tags.
AnalyzedDoc analyze_pretagged(const std::vector<std::vector<std::pair<std::string, std::string>>>& sentences,
                              const std::vector<std::size_t>& paragraph_ids, const Lemmatizer& lemmatizer);

}  // namespace satfake::textproc
