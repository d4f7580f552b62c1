#pragma once

// Command-line front end: run configuration and the study subcommands.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "satfake/corpus.hpp"

namespace satfake::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kValidation = 3,   // ValidationError, ParseError, ConfigError, EmptyDocumentError
  kConvergence = 4,  // ConvergenceError
  kIo = 5,           // IoError
};

/// Environment variable that replaces the resource directory.
inline constexpr const char* kResourceDirEnv = "SATFAKE_RESOURCE_DIR";
inline constexpr std::uint64_t kDefaultSeed = 20190603;

struct RunConfig {
  std::filesystem::path raw_dir;      // raw dataset, used by `run` when set
  std::filesystem::path corpus;       // canonical corpus file
  std::filesystem::path resource_dir;
  std::filesystem::path resources;    // manifest; default <resource_dir>/manifest.conf
  std::filesystem::path catalog;      // default <resource_dir>/config/catalog.tsv
  std::filesystem::path readability;  // default <resource_dir>/config/readability.conf
  std::filesystem::path output = "out";

  std::uint64_t seed = kDefaultSeed;
  int k = 10;
  double alpha = 0.05;
  corpus::Label positive = corpus::Label::Fake;
  std::vector<std::string> methods = {"mnb", "svm-coh"};
  std::string baseline = "mnb";
  std::vector<std::filesystem::path> external_predictions;
  std::size_t limit = 0;  // 0 = every article

  bool rotate = true;
  bool kaiser = true;
  std::string svm_features = "survivors";
  double svm_lambda = 1e-3;
  int svm_epochs = 200;
  double svm_step = 0.1;
};

/// Built-in defaults; the resource directory comes from the environment
/// variable when set, otherwise from the build tree.
RunConfig default_config();

/// Flat "key = value" lines, '#' comments. Relative paths resolve against
/// `base_dir`. Unknown keys and malformed values throw ConfigError.
void apply_config_text(RunConfig& config, std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Fills unset resource paths from resource_dir and checks ranges: k >= 2,
/// alpha in (0, 1), known methods and SVM feature variant.
void finalize_config(RunConfig& config);

/// Stable "key = value" rendering, written next to every run's outputs.
std::string render_config(const RunConfig& config);

/// Parses argv and runs one subcommand. Returns the process exit code.
int run(int argc, char** argv);

/// Maps an exception to its exit code.
int exit_code_for(const std::exception& e);

}  // namespace satfake::cli
