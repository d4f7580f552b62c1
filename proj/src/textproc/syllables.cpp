#include <cctype>
#include <string>

#include "satfake/textproc.hpp"

namespace satfake::textproc {

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

}  // namespace

int count_syllables(std::string_view word) {
  std::string letters;
  for (const char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      letters.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (letters.empty()) return 1;

  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    // a leading 'y' is a consonant (yes, young)
    const bool vowel = is_vowel(letters[i]) && !(i == 0 && letters[i] == 'y');
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }

  const std::size_t n = letters.size();
  // silent final e: "make", "time"; but not "-le" after a consonant ("table")
  // and not when the e is the only vowel group ("the", "be")
  if (n >= 3 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2])) {
    const bool consonant_le = letters[n - 2] == 'l' && !is_vowel(letters[n - 3]);
    if (!consonant_le && groups > 1) --groups;
  }
  return groups < 1 ? 1 : groups;
}

}  // namespace satfake::textproc
