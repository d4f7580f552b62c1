#include <cctype>

#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::textproc {

namespace {

// Paragraph spans separated by blank lines (a newline, optional horizontal
// whitespace, another newline).
std::vector<Span> split_paragraphs(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n') {
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        out.push_back({start, i});
        while (j < text.size() && (text[j] == '\n' || text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
        start = j;
        i = j;
        continue;
      }
    }
    ++i;
  }
  out.push_back({start, text.size()});
  return out;
}

bool is_terminator(std::string_view tok) {
  return tok == "." || tok == "!" || tok == "?" || tok == "\xE2\x80\xA6" ||
         (tok.size() >= 2 && tok.find_first_not_of('.') == std::string_view::npos);
}

bool is_closer(std::string_view tok) {
  return tok == "\"" || tok == "'" || tok == ")" || tok == "]" || tok == "}" ||
         tok == "\xE2\x80\x9D" || tok == "\xE2\x80\x99" || tok == "\xC2\xBB";
}

bool starts_lowercase(std::string_view tok) {
  return !tok.empty() && std::islower(static_cast<unsigned char>(tok.front()));
}

bool starts_uppercase_or_digit(std::string_view tok) {
  return !tok.empty() && (std::isupper(static_cast<unsigned char>(tok.front())) ||
                          std::isdigit(static_cast<unsigned char>(tok.front())));
}

}  // namespace

Segmentation segment(std::string_view text) {
  Segmentation seg;
  std::size_t paragraph = 0;
  for (const Span para : split_paragraphs(text)) {
    const auto tokens = tokenize(para, text);
    if (tokens.empty()) continue;
    std::size_t sent_start = tokens.front().span.begin;
    std::size_t i = 0;
    while (i < tokens.size()) {
      const auto& tok = tokens[i].surface;
      if (!is_terminator(tok)) {
        ++i;
        continue;
      }
      const bool ellipsis = tok.size() > 1;
      std::size_t last = i;
      // absorb adjacent terminators and closing quotes/brackets
      while (last + 1 < tokens.size() && tokens[last + 1].span.begin == tokens[last].span.end &&
             (is_terminator(tokens[last + 1].surface) || is_closer(tokens[last + 1].surface))) {
        ++last;
      }
      bool boundary = true;
      if (last + 1 < tokens.size()) {
        const auto& next = tokens[last + 1].surface;
        if (ellipsis) {
          boundary = starts_uppercase_or_digit(next) || !is_word(next);
        } else {
          boundary = !starts_lowercase(next);
        }
      }
      if (boundary) {
        seg.sentences.push_back({sent_start, tokens[last].span.end});
        seg.paragraph_of.push_back(paragraph);
        if (last + 1 < tokens.size()) sent_start = tokens[last + 1].span.begin;
      }
      i = last + 1;
      if (boundary && i >= tokens.size()) sent_start = tokens.back().span.end;
    }
    if (sent_start < tokens.back().span.end) {
      seg.sentences.push_back({sent_start, tokens.back().span.end});
      seg.paragraph_of.push_back(paragraph);
    }
    ++paragraph;
  }
  return seg;
}

std::vector<Span> segment_sentences(std::string_view text) { return segment(text).sentences; }

}  // namespace satfake::textproc
