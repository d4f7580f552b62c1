#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satfake::util {

bool is_valid_utf8(std::string_view bytes);

/// Re-encode Windows-1252 bytes as UTF-8.
std::string cp1252_to_utf8(std::string_view bytes);

struct DecodedCodepoint {
  char32_t value;
  std::size_t length;  // bytes consumed, >= 1
};

/// Decode the codepoint starting at `pos`. Invalid sequences decode as a
/// single byte with value U+FFFD so callers always make progress.
DecodedCodepoint decode_utf8(std::string_view text, std::size_t pos);

/// ASCII-only lowercase; multi-byte sequences pass through untouched.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char delim);

bool starts_with_icase(std::string_view s, std::string_view prefix);
bool ends_with_icase(std::string_view s, std::string_view suffix);

/// Whole-file read; throws IoError naming `what` when the file is missing.
std::string read_file(const std::filesystem::path& path, std::string_view what = "file");

/// Write via a temporary sibling and rename, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Shortest decimal that parses back to the same double ("NA" for NaN).
std::string format_double(double value);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

}  // namespace satfake::util
