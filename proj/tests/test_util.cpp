#include <cmath>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "satfake/error.hpp"
#include "satfake/util/rng.hpp"
#include "satfake/util/text.hpp"
#include "support.hpp"

using namespace satfake;
using namespace satfake::util;

TEST_CASE("utf-8 validity") {
  CHECK(is_valid_utf8("plain ascii"));
  CHECK(is_valid_utf8("caf\xc3\xa9 \xe2\x80\x94 \xf0\x9f\x98\x80"));
  CHECK_FALSE(is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(is_valid_utf8("\xc3"));
  CHECK_FALSE(is_valid_utf8("\xc0\xaf"));
  CHECK_FALSE(is_valid_utf8("\xed\xa0\x80"));
}

TEST_CASE("decode_utf8 always makes progress") {
  const std::string s = "a\xc3\xa9\xff\xf0\x9f\x98\x80";
  CHECK(decode_utf8(s, 0).value == U'a');
  CHECK(decode_utf8(s, 1).value == U'é');
  CHECK(decode_utf8(s, 1).length == 2);
  CHECK(decode_utf8(s, 3).value == U'�');
  CHECK(decode_utf8(s, 3).length == 1);
  CHECK(decode_utf8(s, 4).value == U'\U0001F600');
}

TEST_CASE("cp1252") {
  CHECK(cp1252_to_utf8("\x93quoted\x94") == "\xe2\x80\x9cquoted\xe2\x80\x9d");
  CHECK(cp1252_to_utf8("caf\xe9") == "caf\xc3\xa9");
  CHECK(cp1252_to_utf8("plain") == "plain");
  CHECK(is_valid_utf8(cp1252_to_utf8("\x80\x81\x8d\x8f\x90\x9d\xff")));
}

TEST_CASE("string helpers") {
  CHECK(to_lower("HeLLo \xc3\x89") == "hello \xc3\x89");
  CHECK(trim("  x y \t\r\n") == "x y");
  CHECK(trim("   ").empty());
  const auto parts = split("a,,b,", ',');
  REQUIRE(parts.size() == 4);
  CHECK(parts[1].empty());
  CHECK(parts[3].empty());
  CHECK(starts_with_icase("Satire_01", "satire"));
  CHECK(ends_with_icase("x.TXT", ".txt"));
  CHECK_FALSE(ends_with_icase("t", ".txt"));
}

TEST_CASE("format_double round-trips") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(40)) - 20.0);
    const auto text = format_double(v);
    const auto back = parse_double(text);
    REQUIRE(back);
    CHECK(*back == v);
  }
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "NA");
  CHECK(std::isnan(*parse_double("NA")));
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("parsers reject trailing garbage") {
  CHECK(parse_double("1.5") == 1.5);
  CHECK_FALSE(parse_double("1.5x"));
  CHECK_FALSE(parse_double(""));
  CHECK(parse_int("-42") == -42);
  CHECK_FALSE(parse_int("4.2"));
  CHECK_FALSE(parse_int("99999999999999999999"));
}

TEST_CASE("files") {
  const auto dir = test::scratch("util_files");
  write_file_atomic(dir / "a.txt", "contents\n");
  CHECK(read_file(dir / "a.txt") == "contents\n");
  write_file_atomic(dir / "a.txt", "second");
  CHECK(read_file(dir / "a.txt") == "second");
  CHECK_THROWS_AS(read_file(dir / "missing.txt", "widget"), IoError);
  try {
    (void)read_file(dir / "missing.txt", "widget");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("widget") != std::string::npos);
  }
}

TEST_CASE("rng matches the reference engine") {
  Rng a(5489);
  for (int i = 0; i < 9999; ++i) a.next();
  CHECK(a.next() == 9981545732273789042ULL);

  Rng b(7), c(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(b.uniform() == c.uniform());
    CHECK(b.normal() == c.normal());
  }
}

TEST_CASE("rng draws are in range and roughly uniform") {
  Rng r(3);
  std::vector<int> counts(7, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = r.below(7);
    REQUIRE(k < 7);
    ++counts[k];
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  for (const int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.03);
}

TEST_CASE("shuffle is a deterministic permutation") {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  b = a;
  Rng r1(9), r2(9);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  CHECK(a == b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(50);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);
  CHECK(a != expect);
}
