#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "satfake/error.hpp"
#include "satfake/textproc.hpp"
#include "satfake/util/rng.hpp"
#include "satfake/util/text.hpp"

namespace satfake::textproc {

namespace {

constexpr std::string_view kModelMagic = "satfake-perceptron-tagger";
constexpr int kModelVersion = 1;

std::string normalize(const std::string& word) {
  if (word.find('-') != std::string::npos && word.front() != '-') return "!HYPHEN";
  const bool all_digits =
      !word.empty() && std::all_of(word.begin(), word.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (all_digits && word.size() == 4) return "!YEAR";
  if (!word.empty() && std::isdigit(static_cast<unsigned char>(word.front()))) return "!DIGITS";
  return util::to_lower(word);
}

std::string suffix3(const std::string& s) { return s.size() <= 3 ? s : s.substr(s.size() - 3); }

std::vector<std::string> context_of(std::span<const std::string> words) {
  std::vector<std::string> ctx;
  ctx.reserve(words.size() + 4);
  ctx.emplace_back("-START-");
  ctx.emplace_back("-START2-");
  for (const auto& w : words) ctx.push_back(normalize(w));
  ctx.emplace_back("-END-");
  ctx.emplace_back("-END2-");
  return ctx;
}

std::vector<std::string> features_at(std::size_t i, const std::vector<std::string>& ctx, const std::string& prev,
                                     const std::string& prev2) {
  const std::size_t c = i + 2;
  const std::string& word = ctx[c];
  std::vector<std::string> f;
  f.reserve(14);
  f.emplace_back("bias");
  f.push_back("i suffix " + suffix3(word));
  f.push_back("i pref1 " + word.substr(0, 1));
  f.push_back("i-1 tag " + prev);
  f.push_back("i-2 tag " + prev2);
  f.push_back("i tag+i-2 tag " + prev + " " + prev2);
  f.push_back("i word " + word);
  f.push_back("i-1 tag+i word " + prev + " " + word);
  f.push_back("i-1 word " + ctx[c - 1]);
  f.push_back("i-1 suffix " + suffix3(ctx[c - 1]));
  f.push_back("i-2 word " + ctx[c - 2]);
  f.push_back("i+1 word " + ctx[c + 1]);
  f.push_back("i+1 suffix " + suffix3(ctx[c + 1]));
  f.push_back("i+2 word " + ctx[c + 2]);
  return f;
}

// Training-time weight with the bookkeeping needed for averaging.
struct TrainWeight {
  std::uint32_t cls;
  double value = 0.0;
  double total = 0.0;
  std::uint64_t stamp = 0;
};

class Trainer {
 public:
  explicit Trainer(std::size_t n_classes) : n_classes_(n_classes) {}

  std::uint32_t predict(const std::vector<std::string>& features) {
    std::vector<double> scores(n_classes_, 0.0);
    for (const auto& f : features) {
      const auto it = weights_.find(f);
      if (it == weights_.end()) continue;
      for (const auto& w : it->second) scores[w.cls] += w.value;
    }
    return argmax(scores);
  }

  void update(std::uint32_t truth, std::uint32_t guess, const std::vector<std::string>& features) {
    ++instances_;
    if (truth == guess) return;
    for (const auto& f : features) {
      bump(f, truth, 1.0);
      bump(f, guess, -1.0);
    }
  }

  std::unordered_map<std::string, std::vector<std::pair<std::uint32_t, double>>> averaged() const {
    std::unordered_map<std::string, std::vector<std::pair<std::uint32_t, double>>> out;
    for (const auto& [feat, ws] : weights_) {
      for (const auto& w : ws) {
        const double total = w.total + static_cast<double>(instances_ - w.stamp) * w.value;
        const double avg = total / static_cast<double>(std::max<std::uint64_t>(instances_, 1));
        if (avg != 0.0) out[feat].emplace_back(w.cls, avg);
      }
    }
    return out;
  }

  static std::uint32_t argmax(const std::vector<double>& scores) {
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < scores.size(); ++c) {
      if (scores[c] >= scores[best]) best = c;
    }
    return best;
  }

 private:
  std::size_t n_classes_;
  std::uint64_t instances_ = 0;
  std::unordered_map<std::string, std::vector<TrainWeight>> weights_;

  void bump(const std::string& feature, std::uint32_t cls, double delta) {
    auto& ws = weights_[feature];
    auto it = std::find_if(ws.begin(), ws.end(), [&](const TrainWeight& w) { return w.cls == cls; });
    if (it == ws.end()) {
      ws.push_back({cls, 0.0, 0.0, instances_});
      it = ws.end() - 1;
    }
    it->total += static_cast<double>(instances_ - it->stamp) * it->value;
    it->stamp = instances_;
    it->value += delta;
  }
};

}  // namespace

PerceptronTagger PerceptronTagger::train(std::span<const TaggedSentence> corpus, const TrainOptions& opts) {
  PerceptronTagger model;
  std::map<std::string, std::map<std::string, int>> counts;
  std::map<std::string, int> tag_set;
  for (const auto& sent : corpus) {
    if (sent.words.size() != sent.tags.size()) throw ValidationError("tagged sentence with mismatched word/tag counts");
    for (std::size_t i = 0; i < sent.words.size(); ++i) {
      ++counts[sent.words[i]][sent.tags[i]];
      ++tag_set[sent.tags[i]];
    }
  }
  if (tag_set.empty()) throw ValidationError("empty training corpus");
  for (const auto& [tag, _] : tag_set) model.classes_.push_back(tag);
  std::unordered_map<std::string, std::uint32_t> class_index;
  for (std::uint32_t c = 0; c < model.classes_.size(); ++c) class_index[model.classes_[c]] = c;

  for (const auto& [word, tags] : counts) {
    const int n = std::accumulate(tags.begin(), tags.end(), 0, [](int acc, const auto& kv) { return acc + kv.second; });
    const auto mode = std::max_element(tags.begin(), tags.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    if (n >= opts.tagdict_min_count && static_cast<double>(mode->second) / n >= opts.tagdict_min_ratio) {
      model.tagdict_[word] = class_index.at(mode->first);
    }
  }

  Trainer trainer(model.classes_.size());
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  util::Rng rng(opts.seed);
  for (int iter = 0; iter < opts.iterations; ++iter) {
    for (const std::size_t s : order) {
      const auto& sent = corpus[s];
      const auto ctx = context_of(sent.words);
      std::string prev = "-START-";
      std::string prev2 = "-START2-";
      for (std::size_t i = 0; i < sent.words.size(); ++i) {
        std::uint32_t guess;
        const auto dict = model.tagdict_.find(sent.words[i]);
        if (dict != model.tagdict_.end()) {
          guess = dict->second;
        } else {
          const auto feats = features_at(i, ctx, prev, prev2);
          guess = trainer.predict(feats);
          trainer.update(class_index.at(sent.tags[i]), guess, feats);
        }
        prev2 = prev;
        prev = model.classes_[guess];
      }
    }
    rng.shuffle(std::span<std::size_t>(order));
  }

  for (auto& [feat, ws] : trainer.averaged()) {
    std::vector<Weight> kept;
    for (const auto& [cls, value] : ws) {
      if (std::abs(value) >= opts.prune_below) kept.push_back({cls, value});
    }
    if (kept.empty()) continue;
    std::sort(kept.begin(), kept.end(), [](const Weight& a, const Weight& b) { return a.cls < b.cls; });
    model.weights_.emplace(feat, std::move(kept));
  }
  return model;
}

std::uint32_t PerceptronTagger::predict(const std::vector<std::string>& features) const {
  std::vector<double> scores(classes_.size(), 0.0);
  for (const auto& f : features) {
    const auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (const auto& w : it->second) scores[w.cls] += w.value;
  }
  return Trainer::argmax(scores);
}

std::vector<std::string> PerceptronTagger::tag(std::span<const std::string> words) const {
  if (empty()) throw ValidationError("tagger model not loaded");
  std::vector<std::string> tags;
  tags.reserve(words.size());
  const auto ctx = context_of(words);
  std::string prev = "-START-";
  std::string prev2 = "-START2-";
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto dict = tagdict_.find(words[i]);
    const std::uint32_t cls = dict != tagdict_.end() ? dict->second : predict(features_at(i, ctx, prev, prev2));
    tags.push_back(classes_[cls]);
    prev2 = prev;
    prev = tags.back();
  }
  return tags;
}

void PerceptronTagger::save(const std::filesystem::path& path) const {
  std::string out;
  out += fmt::format("{}\t{}\n", kModelMagic, kModelVersion);
  out += fmt::format("classes\t{}\n", classes_.size());
  for (const auto& c : classes_) out += c + "\n";

  std::vector<std::pair<std::string, std::uint32_t>> dict(tagdict_.begin(), tagdict_.end());
  std::sort(dict.begin(), dict.end());
  out += fmt::format("tagdict\t{}\n", dict.size());
  for (const auto& [w, c] : dict) out += fmt::format("{}\t{}\n", w, c);

  std::vector<std::string> feats;
  feats.reserve(weights_.size());
  for (const auto& [f, _] : weights_) feats.push_back(f);
  std::sort(feats.begin(), feats.end());
  out += fmt::format("weights\t{}\n", feats.size());
  for (const auto& f : feats) {
    out += f;
    for (const auto& w : weights_.at(f)) out += fmt::format("\t{}:{:.6g}", w.cls, w.value);
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

PerceptronTagger PerceptronTagger::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("tagger model: cannot open " + path.string());
  PerceptronTagger model;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& why) {
    return ParseError(fmt::format("tagger model {} line {}: {}", path.string(), line_no, why));
  };
  const auto next_line = [&]() {
    if (!std::getline(in, line)) throw fail("unexpected end of file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  const auto header_count = [&](std::string_view key) -> std::size_t {
    next_line();
    const auto parts = util::split(line, '\t');
    if (parts.size() != 2 || parts[0] != key) throw fail(fmt::format("expected '{}' header", key));
    const auto n = util::parse_int(parts[1]);
    if (!n || *n < 0) throw fail("bad count");
    return static_cast<std::size_t>(*n);
  };

  next_line();
  {
    const auto parts = util::split(line, '\t');
    if (parts.size() != 2 || parts[0] != kModelMagic) throw fail("not a tagger model");
    if (util::parse_int(parts[1]) != kModelVersion) throw fail("unsupported model version");
  }
  const std::size_t n_classes = header_count("classes");
  for (std::size_t i = 0; i < n_classes; ++i) {
    next_line();
    model.classes_.push_back(line);
  }
  const std::size_t n_dict = header_count("tagdict");
  for (std::size_t i = 0; i < n_dict; ++i) {
    next_line();
    const auto parts = util::split(line, '\t');
    const auto cls = parts.size() == 2 ? util::parse_int(parts[1]) : std::nullopt;
    if (!cls || *cls < 0 || static_cast<std::size_t>(*cls) >= n_classes) throw fail("bad tagdict entry");
    model.tagdict_.emplace(std::string(parts[0]), static_cast<std::uint32_t>(*cls));
  }
  const std::size_t n_weights = header_count("weights");
  model.weights_.reserve(n_weights);
  for (std::size_t i = 0; i < n_weights; ++i) {
    next_line();
    const auto parts = util::split(line, '\t');
    if (parts.size() < 2) throw fail("weight line without values");
    std::vector<Weight> ws;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const auto colon = parts[k].find(':');
      if (colon == std::string_view::npos) throw fail("bad weight entry");
      const auto cls = util::parse_int(parts[k].substr(0, colon));
      const auto value = util::parse_double(parts[k].substr(colon + 1));
      if (!cls || !value || *cls < 0 || static_cast<std::size_t>(*cls) >= n_classes) throw fail("bad weight entry");
      ws.push_back({static_cast<std::uint32_t>(*cls), *value});
    }
    model.weights_.emplace(std::string(parts[0]), std::move(ws));
  }
  return model;
}

std::vector<std::string> pos_tag(std::span<const std::string> words, const PerceptronTagger& model) {
  return model.tag(words);
}

std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path) {
  const std::string data = util::read_file(path, "tagged corpus");
  std::vector<TaggedSentence> out;
  for (const auto raw : util::split(data, '\n')) {
    const auto line = util::trim(raw);
    if (line.empty()) continue;
    TaggedSentence sent;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      std::size_t end = line.find(' ', pos);
      if (end == std::string_view::npos) end = line.size();
      const auto item = line.substr(pos, end - pos);
      const auto slash = item.rfind('/');
      if (slash == std::string_view::npos || slash == 0 || slash + 1 == item.size()) {
        throw ParseError(fmt::format("{}: malformed token '{}'", path.string(), item));
      }
      std::string word(item.substr(0, slash));
      std::string tag(item.substr(slash + 1));
      if (word == "``" || word == "''") word = "\"";
      if (tag == "``" || tag == "''") tag = "\"";
      sent.words.push_back(std::move(word));
      sent.tags.push_back(std::move(tag));
      pos = end;
    }
    if (!sent.words.empty()) out.push_back(std::move(sent));
  }
  return out;
}

double tagging_accuracy(const PerceptronTagger& model, std::span<const TaggedSentence> gold) {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& sent : gold) {
    const auto tags = model.tag(sent.words);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      correct += tags[i] == sent.tags[i];
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace satfake::textproc
