#include <algorithm>
#include <system_error>

#include <fmt/format.h>

#include "satfake/corpus.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake::corpus {

namespace {

std::optional<Label> directory_label(const std::filesystem::path& rel) {
  std::optional<Label> label;
  for (auto it = rel.begin(); it != rel.end(); ++it) {
    if (std::next(it) == rel.end()) break;  // skip the file name
    const std::string name = util::to_lower(it->string());
    if (name.starts_with("fake")) label = Label::Fake;
    if (name.starts_with("satire")) label = Label::Satire;
  }
  return label;
}

std::string sanitize_id(std::string id) {
  for (char& c : id) {
    if (c == ',' || c == '/' || c == '"' || c == ' ' || c == '\t') c = '_';
  }
  return id;
}

std::string normalize_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out += '\n';
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

IngestResult ingest_directory(const std::filesystem::path& raw_dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(raw_dir, ec)) {
    throw IoError(fmt::format("raw dataset directory not found: {}", raw_dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (auto it = std::filesystem::recursive_directory_iterator(raw_dir, ec);
       !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && util::to_lower(it->path().extension().string()) == ".txt") {
      files.push_back(std::filesystem::relative(it->path(), raw_dir));
    }
  }
  if (ec) throw IoError(fmt::format("cannot walk {}: {}", raw_dir.string(), ec.message()));
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });

  IngestResult result;
  for (const auto& rel : files) {
    const std::string rel_name = rel.generic_string();
    const auto label = directory_label(rel);
    if (!label) continue;  // not under a fake/satire directory
    std::string bytes;
    try {
      bytes = util::read_file(raw_dir / rel, "story");
    } catch (const IoError& e) {
      result.rejected.emplace_back(rel_name, e.what());
      continue;
    }
    if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
    if (!util::is_valid_utf8(bytes)) bytes = util::cp1252_to_utf8(bytes);
    const std::string text = normalize_newlines(bytes);

    std::size_t pos = 0;
    std::string headline;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      const auto line = util::trim(std::string_view(text).substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
      pos = nl == std::string::npos ? text.size() : nl + 1;
      if (!line.empty()) {
        headline = std::string(line);
        break;
      }
    }
    const std::string body(util::trim(std::string_view(text).substr(pos)));
    if (body.empty()) {
      result.rejected.emplace_back(rel_name, "no body after headline");
      continue;
    }
    Article a;
    a.id = sanitize_id(fmt::format("{}-{}", label_name(*label), rel.stem().string()));
    a.label = *label;
    a.headline = headline;
    a.body = body;
    a.source = rel_name;
    (a.label == Label::Fake ? result.fake : result.satire) += 1;
    result.articles.push_back(std::move(a));
  }

  // ids must be unique; fall back to the full relative path on collision
  std::unordered_map<std::string, std::size_t> uses;
  for (const auto& a : result.articles) ++uses[a.id];
  for (auto& a : result.articles) {
    if (uses[a.id] > 1) {
      a.id = sanitize_id(fmt::format("{}-{}", label_name(a.label), *a.source));
    }
  }
  return result;
}

}  // namespace satfake::corpus
