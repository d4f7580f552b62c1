#include <cctype>
#include <string>

#include "doctest.h"
#include "satfake/error.hpp"
#include "satfake/textproc.hpp"
#include "satfake/util/rng.hpp"
#include "support.hpp"

using namespace satfake;
using namespace satfake::textproc;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize({0, text.size()}, text)) out.push_back(t.surface);
  return out;
}

std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : tokenize({0, s.size()}, s)) out.push_back(t.surface);
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

const std::vector<std::string> kFragments = {
    "the", "Cat", "sat", "on", "mat", "Mr.", "Dr.", "Smith", "U.S.", "don't", "it's", "I'm", "they'll", "won't",
    "running", "42", "3.14", "$5", "e-mail", "well-known", ",", ";", ":", "(", ")", "\"", "'", "...", "!", "?", ".",
    "caf\xc3\xa9", "na\xc3\xafve", "\xe6\x97\xa5\xe6\x9c\xac", "\xf0\x9f\x98\x80", "\xe2\x80\x9cquoted\xe2\x80\x9d",
    "\xff\xfe", "J.", "a.m.", "etc.", "--", "#tag", "@user", "http://x.org/a?b=c"};

std::string random_text(util::Rng& rng) {
  std::string s;
  const std::size_t n = rng.below(40);
  for (std::size_t i = 0; i < n; ++i) {
    s += kFragments[rng.below(kFragments.size())];
    static const char* const kSeparators[] = {"", " ", " ", " ", " ", "  ", "\n", "\n\n", "\t", " \n "};
    s += kSeparators[rng.below(10)];
  }
  return s;
}

}  // namespace

TEST_SUITE("segmentation") {
  TEST_CASE("examples") {
    CHECK(segment_sentences("Hello. Goodbye.").size() == 2);
    CHECK(segment_sentences("Mr. Smith won. He smiled.").size() == 2);
    CHECK(segment_sentences("no punctuation here").size() == 1);
    CHECK(segment_sentences("").empty());
    CHECK(segment_sentences("She works at the U.S. embassy. It is big.").size() == 2);
    CHECK(segment_sentences("Wait... What? \"Yes!\" he said.").size() == 3);
  }

  TEST_CASE("paragraphs split on blank lines and sentences never cross them") {
    const std::string text = "First one. Second one\n\nThird one.\n\n\nFourth";
    const auto s = segment(text);
    REQUIRE(s.sentences.size() == 4);
    CHECK(s.paragraph_of == std::vector<std::size_t>{0, 0, 1, 2});
    CHECK(text.substr(s.sentences[1].begin, s.sentences[1].size()) == "Second one");
  }

  TEST_CASE("spans are ordered and cover every non-whitespace byte once") {
    util::Rng rng(1);
    for (int t = 0; t < 300; ++t) {
      const std::string text = random_text(rng);
      const auto spans = segment_sentences(text);
      std::vector<int> cover(text.size(), 0);
      std::size_t prev_end = 0;
      for (const auto& sp : spans) {
        CHECK(sp.begin < sp.end);
        CHECK(sp.begin >= prev_end);
        prev_end = sp.end;
        for (std::size_t i = sp.begin; i < sp.end; ++i) ++cover[i];
      }
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_space(text[i])) CHECK(cover[i] == 1);
      }
    }
  }
}

TEST_SUITE("tokenization") {
  TEST_CASE("examples") {
    CHECK(surfaces("The cat sat.") == std::vector<std::string>{"The", "cat", "sat", "."});
    CHECK(surfaces("don't") == std::vector<std::string>{"do", "n't"});
    CHECK(surfaces("it's") == std::vector<std::string>{"it", "'s"});
    CHECK(tokenize({3, 3}, "abc def").empty());
    CHECK(surfaces("(Hello, world!)") == std::vector<std::string>{"(", "Hello", ",", "world", "!", ")"});
  }

  TEST_CASE("abbreviations keep their period") {
    CHECK(is_abbreviation("Mr"));
    CHECK(is_abbreviation("Dr"));
    CHECK_FALSE(is_abbreviation("cat"));
    CHECK(surfaces("Mr. Smith")[0] == "Mr.");
  }

  TEST_CASE("tokens are ordered, exact slices, and cover every non-whitespace byte once") {
    util::Rng rng(2);
    for (int t = 0; t < 300; ++t) {
      const std::string text = random_text(rng);
      const auto toks = tokenize({0, text.size()}, text);
      std::vector<int> cover(text.size(), 0);
      std::size_t prev_end = 0;
      for (const auto& tok : toks) {
        REQUIRE(tok.span.begin < tok.span.end);
        CHECK(tok.span.begin >= prev_end);
        prev_end = tok.span.end;
        CHECK(tok.surface == text.substr(tok.span.begin, tok.span.size()));
        for (std::size_t i = tok.span.begin; i < tok.span.end; ++i) ++cover[i];
      }
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_space(text[i])) CHECK(cover[i] == 1);
      }
    }
  }

  TEST_CASE("idempotent on space-joined surfaces") {
    util::Rng rng(3);
    for (int t = 0; t < 300; ++t) {
      const auto first = surfaces(random_text(rng));
      std::string joined;
      for (const auto& s : first) joined += s + " ";
      CHECK(surfaces(joined) == first);
    }
  }
}

TEST_SUITE("tagger") {
  const PerceptronTagger& tagger() { return test::resources().tagger; }

  TEST_CASE("examples") {
    const auto tags = pos_tag(words_of("He was running"), tagger());
    REQUIRE(tags.size() == 3);
    CHECK(tags[2] == "VBG");
    CHECK(pos_tag(std::vector<std::string>{"The"}, tagger()) == std::vector<std::string>{"DT"});
  }

  TEST_CASE("bundled gold fixture agrees at least 90%") {
    const auto gold = read_tagged_corpus(test::data_dir() / "tagger_gold.txt");
    std::size_t tokens = 0;
    for (const auto& s : gold) tokens += s.words.size();
    CHECK(tokens >= 200);
    const double acc = tagging_accuracy(tagger(), gold);
    INFO("accuracy " << acc);
    CHECK(acc >= 0.90);
  }

  TEST_CASE("total and deterministic on arbitrary input") {
    util::Rng rng(4);
    for (int t = 0; t < 100; ++t) {
      auto words = words_of(random_text(rng));
      words.push_back("\xff");
      words.push_back("zzqxj");
      const auto a = pos_tag(words, tagger());
      CHECK(a.size() == words.size());
      CHECK(a == pos_tag(words, tagger()));
      for (const auto& tag : a) CHECK_FALSE(tag.empty());
    }
    CHECK(pos_tag(std::vector<std::string>{}, tagger()).empty());
  }

  TEST_CASE("training, saving and loading") {
    const auto corpus = read_tagged_corpus(test::data_dir() / "tagger_gold.txt");
    PerceptronTagger::TrainOptions o;
    o.iterations = 3;
    o.seed = 9;
    const auto model = PerceptronTagger::train(corpus, o);
    CHECK(tagging_accuracy(model, corpus) > 0.9);
    const auto path = test::scratch("tagger") / "model.txt";
    model.save(path);
    const auto back = PerceptronTagger::load(path);
    CHECK(back.feature_count() == model.feature_count());
    for (const auto& s : corpus) CHECK(back.tag(s.words) == model.tag(s.words));

    const auto again = PerceptronTagger::train(corpus, o);
    const auto path2 = test::scratch("tagger2") / "model.txt";
    again.save(path2);
    CHECK(util::read_file(path) == util::read_file(path2));
  }

  TEST_CASE("bad model files") {
    CHECK_THROWS_AS(PerceptronTagger::load(test::scratch("tagger_bad") / "none"), IoError);
    const auto path = test::scratch("tagger_bad") / "bad.txt";
    util::write_file_atomic(path, "not a model\n");
    CHECK_THROWS_AS(PerceptronTagger::load(path), ParseError);
  }

  TEST_CASE("quote tokens are normalized") {
    const auto path = test::scratch("tagged") / "c.txt";
    util::write_file_atomic(path, "``/`` Hi/UH ''/'' ./.\n\n");
    const auto c = read_tagged_corpus(path);
    REQUIRE(c.size() == 1);
    CHECK(c[0].words == std::vector<std::string>{"\"", "Hi", "\"", "."});
    CHECK(c[0].tags == std::vector<std::string>{"\"", "UH", "\"", "."});
  }
}

TEST_SUITE("lemmatizer") {
  const Lemmatizer& lem() { return test::resources().lemmatizer; }

  TEST_CASE("examples") {
    CHECK(lem().lemmatize("ran", "VBD") == "run");
    CHECK(lem().lemmatize("cats", "NNS") == "cat");
    CHECK(lem().lemmatize("the", "DT") == "the");
    CHECK(lem().lemmatize("walked", "VBD") == "walk");
    CHECK(lem().lemmatize("Running", "VBG") == "run");
    CHECK(lem().lemmatize("was", "VBD") == "be");
    CHECK(lem().lemmatize("bigger", "JJR") == "big");
    CHECK(lem().lemmatize("Houses", "NNS") == "house");
  }

  TEST_CASE("exception table and rules without a vocabulary") {
    Lemmatizer l;
    l.add_exception("geese", 'n', "goose");
    CHECK(l.lemmatize("Geese", "NNS") == "goose");
    CHECK(l.lemmatize("dogs", "NNS") == "dog");
    CHECK(l.lemmatize("ABC", "NNP") == "abc");
  }

  TEST_CASE("always lowercase and non-empty") {
    util::Rng rng(5);
    const char* tags[] = {"NN", "NNS", "VBD", "VBG", "VBZ", "JJR", "RBS", "DT", "XX"};
    for (int t = 0; t < 500; ++t) {
      std::string w;
      for (std::uint64_t i = 0, n = 1 + rng.below(10); i < n; ++i) {
        w += static_cast<char>(rng.below(3) == 0 ? 'A' + rng.below(26) : 'a' + rng.below(26));
      }
      if (rng.below(4) == 0) w += "s";
      const auto l = lem().lemmatize(w, tags[rng.below(9)]);
      CHECK_FALSE(l.empty());
      for (const char c : l) CHECK_FALSE(std::isupper(static_cast<unsigned char>(c)));
    }
  }
}

TEST_SUITE("syllables") {
  TEST_CASE("examples") {
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("beautiful") == 3);
    CHECK(count_syllables("e") == 1);
    CHECK(count_syllables("the") == 1);
    CHECK(count_syllables("make") == 1);
    CHECK(count_syllables("water") == 2);
    CHECK(count_syllables("123") == 1);
    CHECK(count_syllables("--") == 1);
    CHECK(count_syllables("extraordinarily") >= 5);
  }
}

TEST_SUITE("analyze") {
  TEST_CASE("span integrity, paragraph partition and content flags") {
    const auto& res = test::resources();
    util::Rng rng(6);
    for (int t = 0; t < 150; ++t) {
      const std::string text = random_text(rng);
      const auto doc = analyze(text, res.tagger, res.lemmatizer);
      CHECK(doc.text == text);
      std::size_t prev = 0;
      for (const auto& s : doc.sentences) {
        CHECK(s.span.begin >= prev);
        CHECK(s.span.end <= text.size());
        prev = s.span.end;
        std::size_t tprev = s.span.begin;
        for (const auto& tok : s.tokens) {
          CHECK(tok.span.begin >= tprev);
          CHECK(tok.span.begin < tok.span.end);
          CHECK(tok.span.end <= s.span.end);
          tprev = tok.span.end;
          CHECK_FALSE(tok.lemma.empty());
          CHECK_FALSE(tok.pos.empty());
          CHECK(tok.is_content_word == (is_word(tok.surface) && is_content(tok.pos, tok.lemma)));
        }
      }
      std::size_t next = 0;
      for (const auto& p : doc.paragraphs) {
        CHECK(p.first == next);
        CHECK(p.last > p.first);
        const auto index = static_cast<std::size_t>(&p - doc.paragraphs.data());
        for (std::size_t i = p.first; i < p.last; ++i) CHECK(doc.sentences[i].paragraph == index);
        next = p.last;
      }
      CHECK(next == doc.sentences.size());
    }
  }

  TEST_CASE("content words follow the tag families") {
    CHECK(is_content("NN", "cat"));
    CHECK(is_content("VBD", "run"));
    CHECK_FALSE(is_content("VBD", "be"));
    CHECK_FALSE(is_content("VBZ", "have"));
    CHECK(is_content("JJ", "big"));
    CHECK(is_content("RB", "quickly"));
    CHECK_FALSE(is_content("DT", "the"));
    CHECK_FALSE(is_content("PRP", "he"));
  }

  TEST_CASE("deterministic analyses") {
    const auto& res = test::resources();
    const std::string text = "The senator said it was fine.\n\nNobody believed him. Not even his dog!";
    const auto a = analyze(text, res.tagger, res.lemmatizer);
    const auto b = analyze(text, res.tagger, res.lemmatizer);
    REQUIRE(a.sentences.size() == 3);
    CHECK(a.paragraphs.size() == 2);
    for (std::size_t i = 0; i < a.sentences.size(); ++i) {
      REQUIRE(a.sentences[i].tokens.size() == b.sentences[i].tokens.size());
      for (std::size_t j = 0; j < a.sentences[i].tokens.size(); ++j) {
        CHECK(a.sentences[i].tokens[j].pos == b.sentences[i].tokens[j].pos);
        CHECK(a.sentences[i].tokens[j].lemma == b.sentences[i].tokens[j].lemma);
      }
    }
    CHECK(a.word_count() == 13);
    CHECK(a.token_count() == 16);
  }
}
