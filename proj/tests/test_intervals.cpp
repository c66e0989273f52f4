#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "freecairn/errors.hpp"
#include "freecairn/interval_checks.hpp"
#include "freecairn/intervals.hpp"

using namespace freecairn;

namespace {

const IntervalSystem& sys() { return IntervalSystem::standard(); }

std::vector<Word> words(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* s : list) out.push_back(parse_word(s));
  std::sort(out.begin(), out.end());
  return out;
}

// I_{n+1} = I_n ∪ l_n I_n on std::set, without IntervalSystem.
std::vector<std::set<Word>> naive_chain(int max_n) {
  std::vector<std::set<Word>> chain{{Word{}}};
  for (int n = 0; n < max_n; ++n) {
    auto next = chain.back();
    for (const Word& x : chain.back()) next.insert(letter_schedule(static_cast<std::size_t>(n)) * x);
    chain.push_back(std::move(next));
  }
  return chain;
}

Interval lit(const char* s) { return sys().from_literal(parse_interval_literal(s)); }

}  // namespace

TEST(BaseChain, DisplayedSets) {
  EXPECT_EQ(sys().base_interval(0).elements(), words({"e"}));
  EXPECT_EQ(sys().base_interval(1).elements(), words({"e", "a"}));
  EXPECT_EQ(sys().base_interval(2).elements(), words({"A", "e", "a"}));
  EXPECT_EQ(sys().base_interval(3).elements(), words({"A", "e", "a", "bA", "b", "ba"}));
  EXPECT_EQ(sys().base_interval(4).elements(),
            words({"BA", "B", "Ba", "A", "e", "a", "bA", "b", "ba"}));
  EXPECT_EQ(sys().base_interval(5).elements(),
            words({"BA", "B", "Ba", "aBA", "aB", "aBa", "A", "e", "a", "aa", "bA", "b", "ba", "abA", "ab",
                   "aba"}));
}

TEST(BaseChain, MatchesNaiveConstruction) {
  const auto chain = naive_chain(12);
  for (int n = 0; n <= 12; ++n) {
    const auto I = sys().base_interval(n);
    EXPECT_EQ(I.elements(), std::vector<Word>(chain[n].begin(), chain[n].end())) << n;
  }
}

TEST(BaseChain, SizeRecurrence) {
  const auto chain = naive_chain(12);
  auto size = [&](int n) -> long { return n < 0 ? 0 : static_cast<long>(chain[n].size()); };
  for (int n = 0; n < 12; ++n) {
    const long expected = n % 2 == 0 ? 2 * size(n) - size(n - 3) : 2 * size(n) - size(n - 1);
    EXPECT_EQ(static_cast<long>(sys().base_size(n + 1)), expected) << n;
  }
  EXPECT_EQ(sys().base_size(12), 337u);
}

TEST(BaseChain, StrictlyIncreasing) {
  for (int n = 0; n < 12; ++n) {
    EXPECT_TRUE(sys().base_interval(n).is_subset_of(sys().base_interval(n + 1)));
    EXPECT_LT(sys().base_size(n), sys().base_size(n + 1));
  }
}

TEST(BaseChain, CapEnforced) {
  EXPECT_THROW(sys().base_interval(sys().cap() + 1), ResourceError);
  EXPECT_THROW(sys().base_interval(-1), std::invalid_argument);
}

TEST(Translate, Examples) {
  EXPECT_EQ(sys().translate(parse_word("a"), sys().base_interval(0)).elements(), words({"a"}));
  EXPECT_EQ(sys().translate(parse_word("b"), sys().base_interval(2)).elements(), words({"bA", "b", "ba"}));
}

TEST(Translate, Coherence) {
  const Word u = parse_word("bA");
  const Word v = parse_word("aB");
  for (int n = 0; n <= 6; ++n) {
    const auto I = sys().base_interval(n);
    EXPECT_EQ(sys().translate(u, sys().translate(v, I)), sys().translate(u * v, I));
    EXPECT_EQ(sys().translate(u, I).elements(), left_translate(u, I.elements()));
  }
}

TEST(Recognize, Examples) {
  const auto i1 = sys().recognize(words({"e", "a"}));
  ASSERT_TRUE(i1);
  EXPECT_EQ(i1->rank(), 1);
  EXPECT_TRUE(i1->translate().is_identity());

  const auto bi1 = sys().recognize(words({"b", "ba"}));
  ASSERT_TRUE(bi1);
  EXPECT_EQ(bi1->rank(), 1);
  EXPECT_EQ(bi1->translate(), parse_word("b"));

  EXPECT_FALSE(sys().recognize(words({"e", "B"})));
  EXPECT_TRUE(sys().recognize(std::vector<Word>{})->empty());
}

TEST(Recognize, EveryTranslateRoundTrips) {
  for (int n = 0; n <= 5; ++n) {
    for (const Word& u : ball(3)) {
      const auto I = sys().translate(u, sys().base_interval(n));
      const auto found = sys().recognize(I.elements());
      ASSERT_TRUE(found);
      EXPECT_EQ(found->elements(), I.elements());
      EXPECT_EQ(*found, I);
    }
  }
}

TEST(Intersect, BasicIntersections) {
  EXPECT_EQ(sys().intersect(lit("I3"), lit("b^-1*I3")), sys().base_interval(2));
  EXPECT_TRUE(sys().intersect(lit("I2"), lit("b*I2")).empty());
  EXPECT_EQ(sys().intersect(lit("I4"), lit("a*I4")), sys().base_interval(1));
}

TEST(Intersect, MatchesSetIntersection) {
  const auto subs = sys().subintervals(sys().base_interval(6));
  for (const auto& I : subs) {
    for (const auto& J : subs) {
      EXPECT_EQ(sys().intersect(I, J).elements(), set_intersection(I.elements(), J.elements()));
    }
  }
}

TEST(Literal, ParseAndPrint) {
  EXPECT_EQ(to_literal(lit("I3")), "I3");
  EXPECT_EQ(to_literal(lit("b^-1*I3")), "B*I3");
  EXPECT_EQ(lit("aB*I2"), sys().translate(parse_word("aB"), sys().base_interval(2)));
  EXPECT_TRUE(lit("empty").empty());
  EXPECT_THROW(parse_interval_literal("X3"), ParseError);
  EXPECT_THROW(parse_interval_literal("a*I"), ParseError);
  for (const auto& I : sys().subintervals(sys().base_interval(5))) EXPECT_EQ(lit(to_literal(I).c_str()), I);
}

TEST(Subintervals, SmallCases) {
  EXPECT_EQ(sys().subintervals(sys().base_interval(1)).size(), 3u);
  const auto s2 = sys().subintervals(sys().base_interval(2));
  ASSERT_EQ(s2.size(), 6u);
  EXPECT_EQ(std::count_if(s2.begin(), s2.end(), [](const Interval& I) { return I.rank() == 0; }), 3);
  EXPECT_EQ(sys().subintervals(sys().base_interval(2), true).size(), 7u);
  EXPECT_TRUE(sys().subintervals(sys().base_interval(2), true).front().empty());
}

TEST(Subintervals, LevelCountsOfI3) {
  std::vector<int> by_rank(4, 0);
  for (const auto& I : sys().subintervals(sys().base_interval(3))) ++by_rank[static_cast<std::size_t>(I.rank())];
  EXPECT_EQ(by_rank, (std::vector<int>{6, 4, 2, 1}));
}

TEST(Subintervals, AgreeWithSubsetBruteForce) {
  for (int n = 0; n <= 5; ++n) {
    std::vector<IntervalKey> keys;
    for (const auto& I : sys().subintervals(sys().base_interval(n))) keys.push_back(I.key());
    auto brute = enumerate_subintervals_by_subsets(sys(), n);
    std::sort(keys.begin(), keys.end());
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(keys, brute) << n;
  }
}

TEST(Stabilizer, TrivialUpToTen) {
  // Independent brute force: w I_n = I_n forces w = w e ∈ I_n.
  for (int n = 0; n <= 10; ++n) {
    const auto base = sys().base_interval(n);
    std::vector<Word> fixers;
    for (const Word& x : base.elements()) {
      if (left_translate(x, base.elements()) == base.elements()) fixers.push_back(x);
    }
    EXPECT_EQ(fixers, std::vector<Word>{Word{}}) << n;
    EXPECT_EQ(sys().stabilizer(n), std::vector<Word>{Word{}}) << n;
  }
}

TEST(Section2, SmallSuite) {
  const auto report = verify_interval_calculus(sys(), 5);
  EXPECT_TRUE(report.passed());
  ASSERT_GE(report.intersections.size(), 5u);
  for (const auto& b : report.intersections) {
    if (b.n == 2) EXPECT_TRUE(b.result.empty());
    if (b.n == 3) EXPECT_EQ(b.result, sys().base_interval(2));
    if (b.n == 4) EXPECT_EQ(b.result, sys().base_interval(1));
  }
}

TEST(Section2, ZeroIsVacuous) {
  EXPECT_TRUE(verify_interval_calculus(sys(), 0).passed());
}
