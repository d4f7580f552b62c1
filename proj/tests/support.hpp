#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "satfake/corpus.hpp"
#include "satfake/util/text.hpp"

namespace satfake::test {

inline std::filesystem::path data_dir() { return SATFAKE_TEST_DATA; }
inline std::filesystem::path resource_dir() { return SATFAKE_RESOURCES; }
inline std::filesystem::path cli_binary() { return SATFAKE_CLI; }

/// The shipped resource bundle, loaded once per test binary.
inline const corpus::ResourceBundle& resources() {
  static const corpus::ResourceBundle bundle = corpus::load_resources(resource_dir() / "manifest.conf");
  return bundle;
}

/// Empty scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(SATFAKE_SCRATCH) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace satfake::test
