#include <cmath>
#include <map>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/features.hpp"
#include "satfake/util/text.hpp"

namespace satfake::features {

ReadabilityCoefficients load_readability_coefficients(const std::filesystem::path& path) {
  const std::string data = util::read_file(path, "readability coefficients");
  std::map<std::string, double, std::less<>> kv;
  std::size_t line_no = 0;
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const auto v = eq == std::string_view::npos ? std::nullopt : util::parse_double(util::trim(line.substr(eq + 1)));
    if (!v) throw ParseError(fmt::format("{}:{}: expected key = number", path.string(), line_no));
    kv[std::string(util::trim(line.substr(0, eq)))] = *v;
  }
  auto get = [&](std::string_view key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(fmt::format("{}: missing '{}'", path.string(), key));
    return it->second;
  };
  ReadabilityCoefficients c;
  c.intercept = get("l2_intercept");
  c.content_word_overlap = get("l2_content_word_overlap");
  c.syntactic_similarity = get("l2_syntactic_similarity");
  c.content_word_frequency = get("l2_content_word_frequency");
  return c;
}

double syntactic_similarity(const AnalyzedDoc& doc) {
  std::vector<double> lengths;
  for (const auto& s : doc.sentences) {
    std::size_t n = 0;
    for (const auto& t : s.tokens) n += textproc::is_word(t.surface) ? 1 : 0;
    lengths.push_back(static_cast<double>(n));
  }
  if (lengths.size() < 2) return 1.0;
  const double n = static_cast<double>(lengths.size());
  double mean = 0.0;
  for (const double x : lengths) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : lengths) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / n);
  if (sd == 0.0) return 1.0;
  double abs_z = 0.0;
  for (const double x : lengths) abs_z += std::abs(x - mean) / sd;
  return 1.0 / (1.0 + abs_z / n);
}

Readability readability(const AnalyzedDoc& doc, const corpus::FrequencyTable& table,
                        const ReadabilityCoefficients& coef) {
  const double words = static_cast<double>(checked_word_count(doc));
  const double sentences = static_cast<double>(doc.sentences.size());
  double syllables = 0.0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (textproc::is_word(t.surface)) syllables += textproc::count_syllables(t.surface);
    }
  }
  Readability r;
  r.flesch_reading_ease = 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words);
  r.flesch_kincaid_grade = 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;

  const IndexValue cwo = content_word_overlap(doc);
  const FrequencyStats freq = word_frequency_stats(doc, table);
  r.l2.value = coef.intercept + coef.content_word_overlap * cwo.value +
               coef.syntactic_similarity * syntactic_similarity(doc) +
               coef.content_word_frequency * freq.content_words.value;
  r.l2.defaulted = cwo.defaulted || freq.content_words.defaulted;
  return r;
}

}  // namespace satfake::features
