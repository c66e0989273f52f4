#include <random>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "freecairn/errors.hpp"
#include "freecairn/freegroup.hpp"

using namespace freecairn;

namespace {

// Stack reduction on the serialized alphabet, independent of Word.
std::string reduce(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == 'e') continue;
    const char inverse = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
    if (!out.empty() && out.back() == inverse) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out.empty() ? "e" : out;
}

std::string random_string(std::mt19937_64& rng, int max_len) {
  static const char alphabet[] = "aAbB";
  std::uniform_int_distribution<int> len(0, max_len), pick(0, 3);
  std::string s;
  for (int i = len(rng); i > 0; --i) s.push_back(alphabet[pick(rng)]);
  return s;
}

Word w(const char* s) { return parse_word(s); }

}  // namespace

TEST(Word, IdentityRendering) {
  EXPECT_EQ(to_string(Word{}), "e");
  EXPECT_TRUE(parse_word("e").is_identity());
  EXPECT_TRUE(parse_word("").is_identity());
  EXPECT_EQ(Word::identity().length(), 0u);
}

TEST(Word, SpecExamples) {
  EXPECT_EQ(w("ab") * w("Ba"), w("aa"));
  EXPECT_EQ(to_string(w("aA")), "e");
  EXPECT_EQ(inv(w("abA")), w("aBA"));
  EXPECT_EQ(to_string(w("a") * w("A")), "e");
}

TEST(Word, ParseReducesFreely) {
  EXPECT_EQ(to_string(w("abBA")), "e");
  EXPECT_EQ(to_string(w("aabBb")), "aab");
}

TEST(Word, ParseErrorPosition) {
  try {
    parse_word("abxA");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_word("ae"), ParseError);
}

TEST(Word, LetterSchedule) {
  EXPECT_EQ(letter_schedule(0), Letter::a);
  EXPECT_EQ(letter_schedule(1), Letter::a_inv);
  EXPECT_EQ(letter_schedule(2), Letter::b);
  EXPECT_EQ(letter_schedule(3), Letter::b_inv);
  EXPECT_EQ(letter_schedule(13), Letter::a_inv);
  for (Letter l : kLetters) EXPECT_EQ(inverse(inverse(l)), l);
}

TEST(Word, ShortlexOrder) {
  EXPECT_LT(Word{}, w("a"));
  EXPECT_LT(w("a"), w("A"));
  EXPECT_LT(w("A"), w("b"));
  EXPECT_LT(w("b"), w("B"));
  EXPECT_LT(w("B"), w("aa"));
  EXPECT_LT(w("aB"), w("Ab"));
}

TEST(Word, BeginsWith) {
  EXPECT_TRUE(begins_with(w("ab"), Letter::a));
  EXPECT_FALSE(begins_with(w("ab"), Letter::b));
  for (Letter l : kLetters) EXPECT_FALSE(begins_with(Word{}, l));
}

TEST(Word, PrefixSuffix) {
  const Word x = w("abAB");
  for (std::size_t k = 0; k <= x.length(); ++k) EXPECT_EQ(x.prefix(k) * x.suffix_from(k), x);
}

TEST(WordProperty, MatchesStackReduction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = random_string(rng, 12);
    const auto t = random_string(rng, 12);
    EXPECT_EQ(to_string(w(s.c_str()) * w(t.c_str())), reduce(s + t)) << s << " * " << t;
  }
}

TEST(WordProperty, GroupLaws) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word x = w(random_string(rng, 10).c_str());
    const Word y = w(random_string(rng, 10).c_str());
    const Word z = w(random_string(rng, 10).c_str());
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * inv(x)).is_identity());
    EXPECT_TRUE((inv(x) * x).is_identity());
    EXPECT_EQ(x * Word{}, x);
    EXPECT_EQ(inv(x * y), inv(y) * inv(x));
  }
}

TEST(WordProperty, SerializationRoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word x = w(random_string(rng, 16).c_str());
    EXPECT_EQ(parse_word(to_string(x)), x);
  }
}

TEST(WordProperty, HashAgreesWithEquality) {
  EXPECT_EQ(w("abBa").hash(), w("aa").hash());
  EXPECT_EQ(std::hash<Word>{}(w("Ab")), WordHash{}(w("Ab")));
}

TEST(Ball, Sizes) {
  EXPECT_EQ(ball(0).size(), 1u);
  EXPECT_EQ(ball(1).size(), 5u);
  EXPECT_EQ(ball(2).size(), 17u);
  for (int r = 0; r <= 8; ++r) EXPECT_EQ(ball(r).size(), ball_size(r));
}

TEST(Ball, MatchesBruteForce) {
  // Reduce every string of length <= 6.
  std::set<std::string> seen{"e"};
  std::vector<std::string> frontier{""};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::string> next;
    for (const auto& s : frontier) {
      for (char c : std::string("aAbB")) {
        next.push_back(s + c);
        seen.insert(reduce(s + c));
      }
    }
    frontier = std::move(next);
  }
  const auto words = ball(6);
  ASSERT_EQ(words.size(), seen.size());
  for (const auto& x : words) EXPECT_TRUE(seen.contains(to_string(x)));
}

TEST(Ball, ShortlexSorted) {
  const auto words = ball(5);
  for (std::size_t i = 1; i < words.size(); ++i) EXPECT_LT(words[i - 1], words[i]);
}

TEST(Ball, CapEnforced) {
  EXPECT_THROW(ball(15), ResourceError);
  EXPECT_THROW(ball(4, 3), ResourceError);
}
