#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/features.hpp"
#include "satfake/util/text.hpp"

namespace satfake::features {

const std::vector<std::string>& primitive_index_names() {
  static const std::vector<std::string> names = {
      "word_count",
      "sentence_count",
      "mean_sentence_length",
      "mean_word_length",
      "lexical_diversity",
      "first_person_singular_incidence",
      "third_person_singular_incidence",
      "gerund_incidence",
      "adverb_incidence",
      "verb_incidence",
      "verb_phrase_density",
      "agentless_passive_density",
      "causal_intentional_connectives",
      "temporal_expanded_connectives",
      "additive_connectives",
      "adversative_connectives",
      "causal_particle_verb_ratio",
      "word_freq_all",
      "word_freq_content",
      "concreteness",
      "hypernymy_nouns",
      "content_word_overlap_adjacent",
      "lsa_adjacent",
      "lsa_paragraph",
      "lsa_verbs",
      "givenness",
      "flesch_reading_ease",
      "flesch_kincaid_grade",
      "l2_readability",
  };
  return names;
}

const IndexDescriptor* IndexCatalog::find(const std::string& name) const {
  const auto it = std::find_if(indices.begin(), indices.end(), [&](const auto& d) { return d.name == name; });
  return it == indices.end() ? nullptr : &*it;
}

std::vector<std::string> IndexCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (const auto& d : indices) out.push_back(d.name);
  return out;
}

namespace {

std::vector<std::string> list_field(std::string_view field) {
  std::vector<std::string> out;
  if (util::trim(field) == "-") return out;
  for (const auto part : util::split(field, ';')) {
    const auto p = util::trim(part);
    if (!p.empty()) out.emplace_back(p);
  }
  return out;
}

}  // namespace

IndexCatalog parse_catalog(std::string_view data) {
  IndexCatalog cat;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  const auto& primitives = primitive_index_names();
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = util::split(line, '\t');
    if (cols.size() == 2 && cols[0] == "version") {
      const auto v = util::parse_int(util::trim(cols[1]));
      if (!v) throw ParseError(fmt::format("catalog line {}: bad version", line_no));
      cat.version = static_cast<int>(*v);
      continue;
    }
    if (!header_seen) {
      if (cols.empty() || cols[0] != "name") throw ParseError(fmt::format("catalog line {}: expected header", line_no));
      header_seen = true;
      continue;
    }
    if (cols.size() != 8) {
      throw ParseError(fmt::format("catalog line {}: expected 8 tab-separated fields, got {}", line_no, cols.size()));
    }
    IndexDescriptor d;
    d.name = std::string(util::trim(cols[0]));
    d.description = std::string(util::trim(cols[1]));
    const auto kind = util::trim(cols[2]);
    if (kind != "raw" && kind != "composite") {
      throw ParseError(fmt::format("catalog line {}: kind must be raw or composite", line_no));
    }
    d.composite = kind == "composite";
    d.resources = list_field(cols[3]);
    d.default_rule = std::string(util::trim(cols[4]));
    d.scale = std::string(util::trim(cols[5]));
    const auto inv = util::trim(cols[6]);
    if (inv != "yes" && inv != "no") throw ParseError(fmt::format("catalog line {}: invariant must be yes/no", line_no));
    d.duplication_invariant = inv == "yes";
    for (const auto& c : list_field(cols[7])) {
      if (c.size() < 2 || (c[0] != '+' && c[0] != '-')) {
        throw ParseError(fmt::format("catalog line {}: constituent '{}' needs a +/- sign", line_no, c));
      }
      d.constituents.push_back({c.substr(1), c[0] == '-' ? -1.0 : 1.0});
    }
    if (!seen.insert(d.name).second) throw ConfigError(fmt::format("catalog: duplicate index '{}'", d.name));
    if (!d.composite && std::find(primitives.begin(), primitives.end(), d.name) == primitives.end()) {
      throw ConfigError(fmt::format("catalog: unknown index '{}'", d.name));
    }
    if (d.composite && d.constituents.empty()) {
      throw ConfigError(fmt::format("catalog: composite '{}' has no constituents", d.name));
    }
    cat.indices.push_back(std::move(d));
  }
  if (!header_seen) throw ParseError("catalog: missing header");
  for (const auto& d : cat.indices) {
    for (const auto& c : d.constituents) {
      const auto* target = cat.find(c.name);
      if (!target || target->composite) {
        throw ConfigError(fmt::format("catalog: composite '{}' needs raw column '{}'", d.name, c.name));
      }
    }
  }
  return cat;
}

IndexCatalog load_catalog(const std::filesystem::path& path) { return parse_catalog(util::read_file(path, "catalog")); }

}  // namespace satfake::features
