#include <algorithm>
#include <array>

#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::textproc {

namespace {

using util::decode_utf8;

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v' ||
         cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x3000 || cp == 0xFEFF;
}

bool is_apostrophe_cp(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

bool is_nonascii_punct(char32_t cp) {
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201A: case 0x201C: case 0x201D: case 0x201E:
    case 0x2013: case 0x2014: case 0x2015: case 0x2026: case 0x00AB: case 0x00BB:
    case 0x2022: case 0x00B7: case 0x2039: case 0x203A: case 0x00BF: case 0x00A1:
    case 0xFFFD:
      return true;
    default:
      return false;
  }
}

bool is_alnum_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
  }
  return !is_space_cp(cp) && !is_nonascii_punct(cp);
}

bool is_digit_cp(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_joiner_cp(char32_t cp) {
  return cp == U'-' || cp == U'.' || cp == U',' || cp == U':' || cp == U'/' || cp == U'&' ||
         cp == U'@' || cp == U'_' || is_apostrophe_cp(cp);
}

constexpr std::array<std::string_view, 62> kAbbreviations = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "sr",   "jr",   "st",   "mt",   "gen",  "gov",
    "sen",  "rep",  "rev",  "col",  "lt",   "sgt",  "capt", "cmdr", "adm",  "maj",  "pres",
    "supt", "det",  "corp", "inc",  "ltd",  "co",   "bros", "vs",   "etc",  "jan",  "feb",
    "mar",  "apr",  "jun",  "jul",  "aug",  "sep",  "sept", "oct",  "nov",  "dec",  "no",
    "fig",  "approx", "dept", "est", "ft",  "gal",  "hr",   "min",  "mo",   "mph",  "oz",
    "pp",   "sq",   "vol",  "ave",  "blvd", "rd",   "univ"};

struct Piece {
  std::size_t begin;
  std::size_t end;
};

// Clitic suffixes split from the end of a word, longest first.
std::size_t clitic_split_point(std::string_view word) {
  const std::string lower = util::to_lower(word);
  for (std::string_view apos : {std::string_view("'"), std::string_view("\xE2\x80\x99")}) {
    const std::string nt = "n" + std::string(apos) + "t";
    if (lower.size() > nt.size() && lower.ends_with(nt)) {
      const char before = lower[lower.size() - nt.size() - 1];
      if (before >= 'a' && before <= 'z') return lower.size() - nt.size();
    }
    for (std::string_view tail : {"s", "re", "ve", "ll", "d", "m"}) {
      const std::string clitic = std::string(apos) + std::string(tail);
      if (lower.size() > clitic.size() && lower.ends_with(clitic)) return lower.size() - clitic.size();
    }
  }
  if (lower == "cannot") return 3;
  return 0;
}

bool is_clitic(std::string_view word) {
  const std::string lower = util::to_lower(word);
  for (std::string_view apos : {std::string_view("'"), std::string_view("\xE2\x80\x99")}) {
    for (std::string_view tail : {"s", "re", "ve", "ll", "d", "m"}) {
      if (lower == std::string(apos) + std::string(tail)) return true;
    }
  }
  return false;
}

void emit(std::vector<RawToken>& out, std::string_view text, std::size_t begin, std::size_t end) {
  out.push_back({std::string(text.substr(begin, end - begin)), Span{begin, end}});
}

void emit_word(std::vector<RawToken>& out, std::string_view text, std::size_t begin, std::size_t end) {
  const auto word = text.substr(begin, end - begin);
  const std::size_t cut = clitic_split_point(word);
  if (cut > 0) {
    emit(out, text, begin, begin + cut);
    emit(out, text, begin + cut, end);
  } else {
    emit(out, text, begin, end);
  }
}

// Tokenize one whitespace-free chunk [begin, end).
void tokenize_chunk(std::string_view text, std::size_t begin, std::size_t end, std::vector<RawToken>& out) {
  std::size_t pos = begin;
  while (pos < end) {
    const auto cur = decode_utf8(text, pos);
    if (is_alnum_cp(cur.value) ||
        (is_apostrophe_cp(cur.value) && pos + cur.length < end &&
         is_alnum_cp(decode_utf8(text, pos + cur.length).value))) {
      std::size_t j = pos + cur.length;
      char32_t prev = cur.value;
      while (j < end) {
        const auto d = decode_utf8(text, j);
        if (is_alnum_cp(d.value)) {
          prev = d.value;
          j += d.length;
          continue;
        }
        if (is_joiner_cp(d.value) && j + d.length < end) {
          const auto next = decode_utf8(text, j + d.length);
          if (is_alnum_cp(next.value)) {
            const bool numeric_only = d.value == U',' || d.value == U':';
            if (!numeric_only || (is_digit_cp(prev) && is_digit_cp(next.value))) {
              prev = next.value;
              j += d.length + next.length;
              continue;
            }
          }
        }
        break;
      }
      if (!is_alnum_cp(cur.value)) {
        // apostrophe-initial run: keep whole only for a standalone clitic
        if (!is_clitic(text.substr(pos, j - pos))) {
          emit(out, text, pos, pos + cur.length);
          pos += cur.length;
          continue;
        }
        emit(out, text, pos, j);
        pos = j;
        continue;
      }
      // trailing period of abbreviations, initials and dotted acronyms
      if (j < end && text[j] == '.' && (j + 1 >= end || text[j + 1] != '.')) {
        const auto word = text.substr(pos, j - pos);
        const bool initial = word.size() == 1 && word[0] >= 'A' && word[0] <= 'Z';
        const bool dotted = word.find('.') != std::string_view::npos &&
                            std::all_of(word.begin(), word.end(), [](char c) {
                              return c == '.' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
                            });
        if (initial || dotted || is_abbreviation(word)) {
          emit(out, text, pos, j + 1);
          pos = j + 1;
          continue;
        }
      }
      emit_word(out, text, pos, j);
      pos = j;
      continue;
    }
    // runs of dots or hyphens form one token
    if (cur.value == U'.' || cur.value == U'-') {
      std::size_t j = pos + 1;
      while (j < end && text[j] == text[pos]) ++j;
      emit(out, text, pos, j);
      pos = j;
      continue;
    }
    emit(out, text, pos, pos + cur.length);
    pos += cur.length;
  }
}

}  // namespace

bool is_abbreviation(std::string_view word_without_period) {
  const std::string lower = util::to_lower(word_without_period);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

std::vector<RawToken> tokenize(Span span, std::string_view text) {
  std::vector<RawToken> out;
  span.end = std::min(span.end, text.size());
  std::size_t pos = span.begin;
  while (pos < span.end) {
    const auto d = decode_utf8(text, pos);
    if (is_space_cp(d.value)) {
      pos += d.length;
      continue;
    }
    std::size_t chunk_end = pos;
    while (chunk_end < span.end) {
      const auto c = decode_utf8(text, chunk_end);
      if (is_space_cp(c.value)) break;
      chunk_end += c.length;
    }
    chunk_end = std::min(chunk_end, span.end);
    tokenize_chunk(text, pos, chunk_end, out);
    pos = chunk_end;
  }
  return out;
}

bool is_word(std::string_view surface) {
  std::size_t pos = 0;
  while (pos < surface.size()) {
    const auto d = decode_utf8(surface, pos);
    if (is_alnum_cp(d.value)) return true;
    pos += d.length;
  }
  return false;
}

}  // namespace satfake::textproc
