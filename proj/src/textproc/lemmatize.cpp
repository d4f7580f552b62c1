#include <array>
#include <utility>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/textproc.hpp"
#include "satfake/util/text.hpp"

namespace satfake::textproc {

namespace {

using Rule = std::pair<std::string_view, std::string_view>;

// Ordered most specific first.
constexpr std::array<Rule, 10> kNounRules = {{{"ies", "y"},
                                              {"ches", "ch"},
                                              {"shes", "sh"},
                                              {"xes", "x"},
                                              {"zes", "z"},
                                              {"ses", "s"},
                                              {"ves", "f"},
                                              {"ves", "fe"},
                                              {"men", "man"},
                                              {"s", ""}}};

constexpr std::array<Rule, 8> kVerbRules = {{{"ies", "y"},
                                             {"es", "e"},
                                             {"es", ""},
                                             {"s", ""},
                                             {"ed", "e"},
                                             {"ed", ""},
                                             {"ing", "e"},
                                             {"ing", ""}}};

constexpr std::array<Rule, 4> kAdjRules = {{{"est", ""}, {"er", ""}, {"est", "e"}, {"er", "e"}}};

char word_class(std::string_view pos) {
  if (is_noun_tag(pos)) return 'n';
  if (is_verb_tag(pos)) return 'v';
  if (is_adjective_tag(pos)) return 'a';
  if (is_adverb_tag(pos)) return 'r';
  return 0;
}

bool is_consonant(char c) {
  return c >= 'a' && c <= 'z' && c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u';
}

// Clitics and other closed-class forms whose lemma depends on the tag.
std::string clitic_lemma(const std::string& lower, std::string_view pos) {
  std::string w = lower;
  // normalise the typographic apostrophe
  for (std::size_t p = w.find("\xE2\x80\x99"); p != std::string::npos; p = w.find("\xE2\x80\x99")) {
    w.replace(p, 3, "'");
  }
  if (w == "n't") return "not";
  if (w == "'m" || w == "'re") return "be";
  if (w == "'ve") return "have";
  if (w == "'ll") return "will";
  if (w == "'d") return pos == "MD" ? "would" : "have";
  if (w == "'s") {
    if (pos == "VBZ") return "be";
    return "'s";
  }
  if (is_verb_tag(pos)) {
    if (w == "is" || w == "are" || w == "was" || w == "were" || w == "am" || w == "been" || w == "being") return "be";
    if (w == "has" || w == "had" || w == "having") return "have";
    if (w == "does" || w == "did" || w == "done" || w == "doing") return "do";
  }
  if (pos == "MD") {
    if (w == "ca") return "can";
    if (w == "wo") return "will";
    if (w == "sha") return "shall";
  }
  return {};
}

}  // namespace

Lemmatizer Lemmatizer::load(const std::filesystem::path& exceptions) {
  const std::string data = util::read_file(exceptions, "lemma exceptions");
  Lemmatizer lem;
  for (const auto raw : util::split(data, '\n')) {
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto parts = util::split(line, '\t');
    if (parts.size() != 3 || parts[1].size() != 1) continue;
    lem.add_exception(std::string(parts[0]), parts[1][0], std::string(parts[2]));
  }
  return lem;
}

void Lemmatizer::add_exception(std::string form, char word_class, std::string lemma) {
  exceptions_.emplace(std::string(1, word_class) + ":" + util::to_lower(form), util::to_lower(lemma));
}

bool Lemmatizer::known(const std::string& word) const { return vocabulary_.contains(word); }

std::string Lemmatizer::lemmatize(std::string_view surface, std::string_view pos) const {
  const std::string lower = util::to_lower(surface);
  if (lower.empty()) return "_";
  if (auto cl = clitic_lemma(lower, pos); !cl.empty()) return cl;

  const char cls = word_class(pos);
  if (cls == 0) return lower;
  if (const auto it = exceptions_.find(std::string(1, cls) + ":" + lower); it != exceptions_.end()) {
    return it->second;
  }
  // base tags are already lemmas
  if (pos == "NN" || pos == "NNP" || pos == "VB" || pos == "VBP" || pos == "JJ" || cls == 'r') return lower;

  std::span<const Rule> rules;
  if (cls == 'n') rules = kNounRules;
  if (cls == 'v') rules = kVerbRules;
  if (cls == 'a') rules = kAdjRules;

  std::vector<std::string> candidates;
  for (const auto& [suffix, repl] : rules) {
    if (lower.size() > suffix.size() + 1 && lower.ends_with(suffix)) {
      std::string stem = lower.substr(0, lower.size() - suffix.size());
      candidates.push_back(stem + std::string(repl));
      // stopped -> stop, running -> run, bigger -> big
      if (repl.empty() && stem.size() >= 3 && stem.back() == stem[stem.size() - 2] && is_consonant(stem.back())) {
        candidates.push_back(stem.substr(0, stem.size() - 1));
      }
    }
  }
  if (candidates.empty()) return lower;
  if (!vocabulary_.empty()) {
    for (const auto& c : candidates) {
      if (known(c)) return c;
    }
    return lower;
  }
  return candidates.front();
}

}  // namespace satfake::textproc
