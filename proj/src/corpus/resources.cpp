#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "satfake/corpus.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::corpus {

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Calls fn(line) for every non-blank, non-comment line. Comment lines are
// passed to on_comment when given.
template <typename Fn>
void for_each_line(std::string_view data, Fn&& fn) {
  for (const auto raw : util::split(data, '\n')) {
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    fn(line);
  }
}

void note(LoadStats* stats, bool ok) {
  if (!stats) return;
  ++(ok ? stats->entries : stats->skipped);
}

using WordValueMap = std::unordered_map<std::string, double>;

// "word value" lines; value must satisfy accept().
template <typename Accept>
WordValueMap load_word_values(const std::filesystem::path& path, std::string_view what, LoadStats* stats,
                              Accept&& accept) {
  WordValueMap out;
  for_each_line(util::read_file(path, what), [&](std::string_view line) {
    const auto f = fields(line);
    const auto v = f.size() == 2 ? util::parse_double(f[1]) : std::nullopt;
    const bool ok = v && std::isfinite(*v) && accept(*v);
    if (ok) out[util::to_lower(f[0])] = *v;
    note(stats, ok);
  });
  return out;
}

}  // namespace

std::optional<double> FrequencyTable::per_million(const std::string& word) const {
  const auto it = counts.find(word);
  if (it == counts.end() || total <= 0.0) return std::nullopt;
  return it->second / total * 1e6;
}

FrequencyTable load_frequency_table(const std::filesystem::path& path, LoadStats* stats) {
  FrequencyTable t;
  t.counts = load_word_values(path, "frequency", stats, [](double v) { return v >= 1.0; });
  // sum in sorted order so the total does not depend on hash iteration order
  std::vector<double> values;
  values.reserve(t.counts.size());
  for (const auto& [w, c] : t.counts) values.push_back(c);
  std::sort(values.begin(), values.end());
  for (const double c : values) t.total += c;
  if (t.counts.empty()) throw ValidationError(fmt::format("frequency table {} is empty", path.string()));
  return t;
}

ConcretenessNorms load_concreteness(const std::filesystem::path& path, LoadStats* stats) {
  ConcretenessNorms norms;
  const std::string data = util::read_file(path, "concreteness");
  for (const auto raw : util::split(data, '\n')) {
    const auto line = util::trim(raw);
    if (!line.starts_with('#')) continue;
    const auto f = fields(line.substr(1));
    if (f.size() == 3 && f[0] == "scale") {
      const auto lo = util::parse_double(f[1]);
      const auto hi = util::parse_double(f[2]);
      if (lo && hi && *lo < *hi) {
        norms.scale_min = *lo;
        norms.scale_max = *hi;
      }
    }
  }
  for_each_line(data, [&](std::string_view line) {
    const auto f = fields(line);
    const auto v = f.size() == 2 ? util::parse_double(f[1]) : std::nullopt;
    if (!v || !std::isfinite(*v)) {
      note(stats, false);
      return;
    }
    if (*v < norms.scale_min || *v > norms.scale_max) {
      throw ValidationError(fmt::format("concreteness rating {} for '{}' outside scale [{}, {}]", *v, f[0],
                                        norms.scale_min, norms.scale_max));
    }
    norms.ratings[util::to_lower(f[0])] = *v;
    note(stats, true);
  });
  if (norms.ratings.empty()) throw ValidationError(fmt::format("concreteness norms {} are empty", path.string()));
  return norms;
}

HypernymDepths load_hypernym_depths(const std::filesystem::path& path, LoadStats* stats) {
  HypernymDepths h;
  h.depths = load_word_values(path, "hypernyms", stats, [](double v) { return v >= 0.0; });
  if (h.depths.empty()) throw ValidationError(fmt::format("hypernym table {} is empty", path.string()));
  std::vector<double> values;
  values.reserve(h.depths.size());
  for (const auto& [w, d] : h.depths) values.push_back(d);
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (const double d : values) sum += d;
  h.mean = sum / static_cast<double>(values.size());
  return h;
}

std::string_view connective_name(Connective c) {
  switch (c) {
    case Connective::Causal: return "causal";
    case Connective::Intentional: return "intentional";
    case Connective::TemporalExpanded: return "temporal-expanded";
    case Connective::Additive: return "additive";
    case Connective::Adversative: return "adversative";
  }
  return "";
}

std::optional<Connective> parse_connective(std::string_view name) {
  for (int i = 0; i < static_cast<int>(kConnectiveCategories); ++i) {
    const auto c = static_cast<Connective>(i);
    if (connective_name(c) == name) return c;
  }
  return std::nullopt;
}

ConnectiveLexicon load_connectives(const std::filesystem::path& path, LoadStats* stats) {
  ConnectiveLexicon lex;
  for_each_line(util::read_file(path, "connectives"), [&](std::string_view line) {
    const auto tab = line.find('\t');
    const auto cat = tab == std::string_view::npos ? std::nullopt : parse_connective(util::trim(line.substr(0, tab)));
    if (!cat) {
      note(stats, false);
      return;
    }
    std::vector<std::string> phrase;
    for (const auto w : fields(line.substr(tab + 1))) phrase.push_back(util::to_lower(w));
    if (phrase.empty()) {
      note(stats, false);
      return;
    }
    lex.phrases[*cat].push_back(std::move(phrase));
    note(stats, true);
  });
  for (int i = 0; i < static_cast<int>(kConnectiveCategories); ++i) {
    const auto c = static_cast<Connective>(i);
    if (lex.phrases[c].empty()) {
      throw ValidationError(fmt::format("connective lexicon has no entries for '{}'", connective_name(c)));
    }
  }
  return lex;
}

std::unordered_set<std::string> load_word_set(const std::filesystem::path& path, std::string_view what,
                                              LoadStats* stats) {
  std::unordered_set<std::string> out;
  for_each_line(util::read_file(path, what), [&](std::string_view line) {
    const auto f = fields(line);
    if (f.size() != 1) {
      note(stats, false);
      return;
    }
    out.insert(util::to_lower(f[0]));
    note(stats, true);
  });
  if (out.empty()) throw ValidationError(fmt::format("{} list {} is empty", what, path.string()));
  return out;
}

const double* EmbeddingSpace::find(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? nullptr : data_.data() + it->second * dim_;
}

void EmbeddingSpace::add(const std::string& word, std::vector<double> vec) {
  if (vec.empty()) throw ValidationError(fmt::format("embedding for '{}' has dimension 0", word));
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_) {
    throw ValidationError(
        fmt::format("embedding dimension mismatch: '{}' has {} values, expected {}", word, vec.size(), dim_));
  }
  if (const auto it = index_.find(word); it != index_.end()) {
    std::copy(vec.begin(), vec.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    return;
  }
  index_.emplace(word, index_.size());
  data_.insert(data_.end(), vec.begin(), vec.end());
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path, LoadStats* stats) {
  EmbeddingSpace space;
  bool first = true;
  for_each_line(util::read_file(path, "embeddings"), [&](std::string_view line) {
    const auto f = fields(line);
    // optional word2vec-style "count dim" header
    if (first && f.size() == 2 && util::parse_int(f[0]) && util::parse_int(f[1])) {
      first = false;
      return;
    }
    first = false;
    if (f.size() < 2) {
      note(stats, false);
      return;
    }
    std::vector<double> vec;
    vec.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto v = util::parse_double(f[i]);
      if (!v || !std::isfinite(*v)) {
        note(stats, false);
        return;
      }
      vec.push_back(*v);
    }
    space.add(util::to_lower(f[0]), std::move(vec));
    note(stats, true);
  });
  if (space.size() == 0) throw ValidationError(fmt::format("embedding file {} is empty", path.string()));
  return space;
}

std::map<std::string, std::filesystem::path> read_manifest(const std::filesystem::path& path) {
  const std::string data = util::read_file(path, "resource manifest");
  const auto base = path.parent_path();
  std::map<std::string, std::filesystem::path> out;
  std::size_t line_no = 0;
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(fmt::format("{}:{}: expected key = path", path.string(), line_no));
    }
    const std::string key(util::trim(line.substr(0, eq)));
    const std::filesystem::path value(std::string(util::trim(line.substr(eq + 1))));
    out[key] = value.is_absolute() ? value : base / value;
  }
  return out;
}

ResourceBundle load_resources(const std::filesystem::path& manifest) {
  const auto paths = read_manifest(manifest);
  auto need = [&](const std::string& key) -> const std::filesystem::path& {
    const auto it = paths.find(key);
    if (it == paths.end()) throw ConfigError(fmt::format("resource manifest lacks '{}'", key));
    if (!std::filesystem::exists(it->second)) {
      throw IoError(fmt::format("resource '{}' not found: {}", key, it->second.string()));
    }
    return it->second;
  };

  ResourceBundle b;
  auto record = [&](const std::string& name, LoadStats stats) { b.report.push_back({name, need(name), stats}); };

  LoadStats s;
  b.frequency = load_frequency_table(need("frequency"), &s);
  record("frequency", s);
  s = {};
  b.concreteness = load_concreteness(need("concreteness"), &s);
  record("concreteness", s);
  s = {};
  b.hypernyms = load_hypernym_depths(need("hypernyms"), &s);
  record("hypernyms", s);
  s = {};
  b.connectives = load_connectives(need("connectives"), &s);
  record("connectives", s);
  s = {};
  b.causal_verbs = load_word_set(need("causal_verbs"), "causal verbs", &s);
  record("causal_verbs", s);
  s = {};
  b.causal_particles = load_word_set(need("causal_particles"), "causal particles", &s);
  record("causal_particles", s);
  s = {};
  b.embeddings = load_embeddings(need("embeddings"), &s);
  record("embeddings", s);

  b.tagger = textproc::PerceptronTagger::load(need("tagger"));
  record("tagger", {b.tagger.feature_count(), 0});

  b.lemmatizer = textproc::Lemmatizer::load(need("lemma_exceptions"));
  std::unordered_set<std::string> vocab;
  vocab.reserve(b.frequency.counts.size());
  for (const auto& [w, c] : b.frequency.counts) vocab.insert(w);
  b.lemmatizer.set_vocabulary(std::move(vocab));
  record("lemma_exceptions", {b.lemmatizer.exception_count(), 0});
  return b;
}

}  // namespace satfake::corpus
