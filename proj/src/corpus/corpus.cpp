#include <unordered_set>

#include <fmt/format.h>
#include "json.hpp"

#include "satfake/corpus.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::corpus {

std::string_view label_name(Label label) { return label == Label::Fake ? "fake" : "satire"; }

std::optional<Label> parse_label(std::string_view text) {
  const std::string l = util::to_lower(util::trim(text));
  if (l == "fake" || l == "fake news") return Label::Fake;
  if (l == "satire") return Label::Satire;
  return std::nullopt;
}

std::string full_text(const Article& article) {
  if (util::trim(article.headline).empty()) return article.body;
  return article.headline + "\n\n" + article.body;
}

namespace {

std::optional<std::string> string_field(const nlohmann::json& obj, const char* key, std::string& error) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    error = fmt::format("missing field '{}'", key);
    return std::nullopt;
  }
  if (!it->is_string()) {
    error = fmt::format("field '{}' is not a string", key);
    return std::nullopt;
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::string_view data) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  for (const auto raw : util::split(data, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty()) continue;
    auto reject = [&](std::string reason) { corpus.rejections.push_back({line_no, std::move(reason)}); };
    if (!util::is_valid_utf8(line)) {
      reject("invalid UTF-8");
      continue;
    }
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      reject(fmt::format("malformed record: {}", e.what()));
      continue;
    }
    if (!obj.is_object()) {
      reject("record is not an object");
      continue;
    }
    std::string error;
    const auto id = string_field(obj, "id", error);
    const auto label_text = id ? string_field(obj, "label", error) : std::nullopt;
    const auto headline = label_text ? string_field(obj, "headline", error) : std::nullopt;
    const auto body = headline ? string_field(obj, "body", error) : std::nullopt;
    if (!body) {
      reject(error);
      continue;
    }
    if (id->empty()) {
      reject("empty id");
      continue;
    }
    const auto label = parse_label(*label_text);
    if (!label) {
      reject(fmt::format("unknown label '{}'", *label_text));
      continue;
    }
    if (util::trim(*body).empty()) {
      reject("empty body");
      continue;
    }
    if (!seen.insert(*id).second) {
      throw ValidationError(fmt::format("corpus line {}: duplicate id '{}'", line_no, *id));
    }
    Article a{*id, *label, *headline, *body, std::nullopt};
    if (const auto it = obj.find("source"); it != obj.end() && it->is_string()) a.source = it->get<std::string>();
    (a.label == Label::Fake ? corpus.fake : corpus.satire) += 1;
    corpus.articles.push_back(std::move(a));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) { return parse_corpus(util::read_file(path, "corpus")); }

std::string serialize_corpus(const std::vector<Article>& articles) {
  std::string out;
  for (const auto& a : articles) {
    nlohmann::ordered_json obj;
    obj["id"] = a.id;
    obj["label"] = label_name(a.label);
    obj["headline"] = a.headline;
    obj["body"] = a.body;
    if (a.source) obj["source"] = *a.source;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_corpus(const std::vector<Article>& articles, const std::filesystem::path& path) {
  util::write_file_atomic(path, serialize_corpus(articles));
}

}  // namespace satfake::corpus
