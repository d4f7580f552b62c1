#include <cmath>
#include <cstdlib>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "satfake/cli.hpp"
#include "satfake/error.hpp"
#include "satfake/pipeline.hpp"
#include "satfake/util/text.hpp"

#ifndef SATFAKE_DEFAULT_RESOURCE_DIR
#define SATFAKE_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace satfake::cli {

namespace fs = std::filesystem;

namespace {

bool parse_bool(std::string_view v, std::string_view key) {
  const std::string s = util::to_lower(v);
  if (s == "yes" || s == "true" || s == "on" || s == "1") return true;
  if (s == "no" || s == "false" || s == "off" || s == "0") return false;
  throw ConfigError(fmt::format("config key '{}': expected yes or no, got '{}'", key, v));
}

std::vector<std::string> parse_list(std::string_view v) {
  std::vector<std::string> out;
  for (const auto item : util::split(v, ',')) {
    const auto t = util::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

fs::path resolve(std::string_view v, const fs::path& base) {
  if (v.empty()) return {};
  fs::path p{std::string(v)};
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  const char* env = std::getenv(kResourceDirEnv);
  c.resource_dir = env && *env ? fs::path(env) : fs::path(SATFAKE_DEFAULT_RESOURCE_DIR);
  return c;
}

void apply_config_text(RunConfig& c, std::string_view text, const fs::path& base) {
  std::size_t line_no = 0;
  for (const auto raw : util::split(text, '\n')) {
    ++line_no;
    const auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
    const std::string key(util::trim(line.substr(0, eq)));
    const auto value = util::trim(line.substr(eq + 1));
    auto number = [&]() {
      const auto d = util::parse_double(value);
      if (!d || !std::isfinite(*d)) throw ConfigError(fmt::format("config key '{}': '{}' is not a number", key, value));
      return *d;
    };
    auto integer = [&]() {
      const auto i = util::parse_int(value);
      if (!i) throw ConfigError(fmt::format("config key '{}': '{}' is not an integer", key, value));
      return *i;
    };
    if (key == "raw_dir") {
      c.raw_dir = resolve(value, base);
    } else if (key == "corpus") {
      c.corpus = resolve(value, base);
    } else if (key == "resource_dir") {
      c.resource_dir = resolve(value, base);
    } else if (key == "resources") {
      c.resources = resolve(value, base);
    } else if (key == "catalog") {
      c.catalog = resolve(value, base);
    } else if (key == "readability") {
      c.readability = resolve(value, base);
    } else if (key == "output") {
      c.output = resolve(value, base);
    } else if (key == "seed") {
      const auto s = integer();
      if (s < 0) throw ConfigError("config key 'seed' must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "k") {
      c.k = static_cast<int>(integer());
    } else if (key == "alpha") {
      c.alpha = number();
    } else if (key == "positive_class") {
      const auto l = corpus::parse_label(value);
      if (!l) throw ConfigError(fmt::format("config key 'positive_class': unknown label '{}'", value));
      c.positive = *l;
    } else if (key == "methods") {
      c.methods = parse_list(value);
    } else if (key == "baseline") {
      c.baseline = std::string(value);
    } else if (key == "external_predictions") {
      c.external_predictions.clear();
      for (const auto& p : parse_list(value)) c.external_predictions.push_back(resolve(p, base));
    } else if (key == "limit") {
      const auto l = integer();
      if (l < 0) throw ConfigError("config key 'limit' must be non-negative");
      c.limit = static_cast<std::size_t>(l);
    } else if (key == "rotate") {
      c.rotate = parse_bool(value, key);
    } else if (key == "kaiser") {
      c.kaiser = parse_bool(value, key);
    } else if (key == "svm_features") {
      c.svm_features = std::string(value);
    } else if (key == "svm_lambda") {
      c.svm_lambda = number();
    } else if (key == "svm_epochs") {
      c.svm_epochs = static_cast<int>(integer());
    } else if (key == "svm_step") {
      c.svm_step = number();
    } else {
      throw ConfigError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
  }
}

RunConfig load_config(const fs::path& path) {
  RunConfig c = default_config();
  apply_config_text(c, util::read_file(path, "run config"), path.parent_path());
  const char* env = std::getenv(kResourceDirEnv);
  if (env && *env) c.resource_dir = env;
  return c;
}

void finalize_config(RunConfig& c) {
  if (c.resources.empty()) c.resources = c.resource_dir / "manifest.conf";
  if (c.catalog.empty()) c.catalog = c.resource_dir / "config" / "catalog.tsv";
  if (c.readability.empty()) c.readability = c.resource_dir / "config" / "readability.conf";
  if (c.k < 2) throw ConfigError(fmt::format("k must be at least 2, got {}", c.k));
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError(fmt::format("alpha must lie in (0, 1), got {}", c.alpha));
  if (c.methods.empty() && c.external_predictions.empty()) throw ConfigError("no methods enabled");
  for (const auto& m : c.methods) {
    if (m != "mnb" && m != "svm-coh") throw ConfigError(fmt::format("unknown method '{}' (known: mnb, svm-coh)", m));
  }
  if (!pipeline::parse_svm_features(c.svm_features)) {
    throw ConfigError(fmt::format("unknown svm_features '{}' (known: survivors, raw, scores)", c.svm_features));
  }
  if (!(c.svm_lambda > 0.0)) throw ConfigError("svm_lambda must be positive");
  if (c.svm_epochs < 1) throw ConfigError("svm_epochs must be at least 1");
  if (!(c.svm_step > 0.0)) throw ConfigError("svm_step must be positive");
}

std::string render_config(const RunConfig& c) {
  std::vector<std::string> ext;
  for (const auto& p : c.external_predictions) ext.push_back(p.generic_string());
  std::string out;
  out += fmt::format("raw_dir = {}\n", c.raw_dir.generic_string());
  out += fmt::format("corpus = {}\n", c.corpus.generic_string());
  out += fmt::format("resource_dir = {}\n", c.resource_dir.generic_string());
  out += fmt::format("resources = {}\n", c.resources.generic_string());
  out += fmt::format("catalog = {}\n", c.catalog.generic_string());
  out += fmt::format("readability = {}\n", c.readability.generic_string());
  out += fmt::format("output = {}\n", c.output.generic_string());
  out += fmt::format("seed = {}\n", c.seed);
  out += fmt::format("k = {}\n", c.k);
  out += fmt::format("alpha = {}\n", util::format_double(c.alpha));
  out += fmt::format("positive_class = {}\n", corpus::label_name(c.positive));
  out += fmt::format("methods = {}\n", fmt::join(c.methods, ","));
  out += fmt::format("baseline = {}\n", c.baseline);
  out += fmt::format("external_predictions = {}\n", fmt::join(ext, ","));
  out += fmt::format("limit = {}\n", c.limit);
  out += fmt::format("rotate = {}\n", c.rotate ? "yes" : "no");
  out += fmt::format("kaiser = {}\n", c.kaiser ? "yes" : "no");
  out += fmt::format("svm_features = {}\n", c.svm_features);
  out += fmt::format("svm_lambda = {}\n", util::format_double(c.svm_lambda));
  out += fmt::format("svm_epochs = {}\n", c.svm_epochs);
  out += fmt::format("svm_step = {}\n", util::format_double(c.svm_step));
  return out;
}

}  // namespace satfake::cli
