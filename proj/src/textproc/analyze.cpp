#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::textproc {

bool is_noun_tag(std::string_view tag) { return tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS"; }

bool is_verb_tag(std::string_view tag) { return tag.size() >= 2 && tag.substr(0, 2) == "VB"; }

bool is_adjective_tag(std::string_view tag) { return tag == "JJ" || tag == "JJR" || tag == "JJS"; }

bool is_adverb_tag(std::string_view tag) { return tag == "RB" || tag == "RBR" || tag == "RBS"; }

bool is_auxiliary_lemma(std::string_view lemma) { return lemma == "be" || lemma == "have" || lemma == "do"; }

bool is_content(std::string_view tag, std::string_view lemma) {
  if (is_verb_tag(tag)) return !is_auxiliary_lemma(lemma);
  return is_noun_tag(tag) || is_adjective_tag(tag) || is_adverb_tag(tag);
}

std::size_t AnalyzedDoc::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::size_t AnalyzedDoc::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) n += is_word(t.surface);
  }
  return n;
}

namespace {

void finish_paragraphs(AnalyzedDoc& doc) {
  doc.paragraphs.clear();
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    if (doc.paragraphs.empty() || doc.sentences[i].paragraph != doc.sentences[doc.paragraphs.back().first].paragraph) {
      doc.paragraphs.push_back({i, i + 1});
    } else {
      doc.paragraphs.back().last = i + 1;
    }
  }
}

}  // namespace

AnalyzedDoc analyze(std::string text, const PerceptronTagger& tagger, const Lemmatizer& lemmatizer) {
  AnalyzedDoc doc;
  doc.text = std::move(text);
  const Segmentation seg = segment(doc.text);
  for (std::size_t s = 0; s < seg.sentences.size(); ++s) {
    const auto raw = tokenize(seg.sentences[s], doc.text);
    if (raw.empty()) continue;
    std::vector<std::string> words;
    words.reserve(raw.size());
    for (const auto& r : raw) words.push_back(r.surface);
    const auto tags = tagger.tag(words);

    Sentence sent;
    sent.span = seg.sentences[s];
    sent.paragraph = seg.paragraph_of[s];
    sent.tokens.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      Token tok;
      tok.surface = raw[i].surface;
      tok.span = raw[i].span;
      tok.pos = tags[i];
      tok.lemma = lemmatizer.lemmatize(tok.surface, tok.pos);
      tok.is_content_word = is_word(tok.surface) && is_content(tok.pos, tok.lemma);
      sent.tokens.push_back(std::move(tok));
    }
    doc.sentences.push_back(std::move(sent));
  }
  finish_paragraphs(doc);
  return doc;
}

AnalyzedDoc analyze_pretagged(const std::vector<std::vector<std::pair<std::string, std::string>>>& sentences,
                              const std::vector<std::size_t>& paragraph_ids, const Lemmatizer& lemmatizer) {
  AnalyzedDoc doc;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (s > 0) {
      const bool new_paragraph = s < paragraph_ids.size() && paragraph_ids[s] != paragraph_ids[s - 1];
      doc.text += new_paragraph ? "\n\n" : " ";
    }
    Sentence sent;
    sent.paragraph = s < paragraph_ids.size() ? paragraph_ids[s] : 0;
    sent.span.begin = doc.text.size();
    for (std::size_t i = 0; i < sentences[s].size(); ++i) {
      const auto& [surface, tag] = sentences[s][i];
      if (i > 0) doc.text += ' ';
      Token tok;
      tok.surface = surface;
      tok.pos = tag;
      tok.span = {doc.text.size(), doc.text.size() + surface.size()};
      doc.text += surface;
      tok.lemma = lemmatizer.lemmatize(surface, tag);
      tok.is_content_word = is_word(surface) && is_content(tag, tok.lemma);
      sent.tokens.push_back(std::move(tok));
    }
    sent.span.end = doc.text.size();
    doc.sentences.push_back(std::move(sent));
  }
  finish_paragraphs(doc);
  return doc;
}

}  // namespace satfake::textproc
