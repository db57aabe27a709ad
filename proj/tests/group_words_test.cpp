#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "freelink/error.hpp"
#include "freelink/group_words.hpp"
#include "support.hpp"

namespace freelink {
namespace {

Word word(std::size_t n, const std::vector<std::vector<int>>& tuples) {
  Word w{GroupContext::make(n, 1, 2), {}};
  for (const auto& t : tuples) w.letters.push_back(make_letter(t));
  return w;
}

// The four letters of the worked four-component example.
Word abda() { return word(4, {{0, 0}, {0, 1}, {1, 1}, {0, 0}}); }
Word bd() { return word(4, {{0, 1}, {1, 1}}); }

TEST(Context, Complement) {
  auto ctx = GroupContext::make(5, 4, 2);
  EXPECT_EQ(ctx.i, 2u);
  EXPECT_EQ(ctx.j, 4u);
  EXPECT_EQ(ctx.complement(), (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_EQ(ctx.width(), 3u);
  EXPECT_EQ(ctx.rank_of(5), 2u);
  EXPECT_THROW(GroupContext::make(3, 1, 1), PreconditionError);
  EXPECT_THROW(GroupContext::make(3, 1, 4), PreconditionError);
  EXPECT_THROW(ctx.rank_of(2), PreconditionError);
}

TEST(Reduce, Examples) {
  EXPECT_TRUE(reduce(word(3, {{0}, {0}})).letters.empty());
  EXPECT_EQ(reduce(abda()), abda());
  EXPECT_EQ(reduce(word(3, {{1}, {0}, {0}, {1}, {1}})), word(3, {{1}}));
}

TEST(Reduce, MixedWidthsRejected) {
  Word w = word(3, {{1}});
  w.letters.push_back(make_letter({1, 0}));
  EXPECT_THROW(reduce(w), PreconditionError);
}

TEST(Reduce, Confluent) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 2000; ++t) {
    auto ctx = GroupContext::make(2 + t % 4, 1, 2);
    auto w = testing::random_word(rng, ctx, 8);
    auto padded = w;
    const auto letters = std::uint64_t{1} << ctx.width();
    for (int k = 0; k < 3; ++k) {
      Letter x{rng() % letters, ctx.width()};
      auto at = padded.letters.begin() + static_cast<std::ptrdiff_t>(rng() % (padded.letters.size() + 1));
      padded.letters.insert(padded.letters.insert(at, x), x);
    }
    auto r = reduce(w);
    EXPECT_EQ(reduce(padded), r);
    for (std::size_t k = 1; k < r.letters.size(); ++k) EXPECT_NE(r.letters[k - 1], r.letters[k]);
  }
}

TEST(CyclicReduce, Examples) {
  EXPECT_EQ(cyclic_reduce(abda()), bd());
  EXPECT_TRUE(cyclic_reduce(word(3, {})).letters.empty());
  EXPECT_EQ(cyclic_reduce(word(3, {{1}, {0}, {1}, {0}})), word(3, {{1}, {0}, {1}, {0}}));
  // Equal ends are stripped: (1)(0)(1) is conjugate to (0).
  EXPECT_EQ(cyclic_reduce(word(3, {{1}, {0}, {1}})), word(3, {{0}}));
}

TEST(Conjugacy, Examples) {
  EXPECT_TRUE(conjugate_equal(abda(), bd()));
  EXPECT_TRUE(conjugate_equal(abda(), abda()));
  EXPECT_TRUE(conjugate_equal(word(3, {{0}, {1}}), word(3, {{1}, {0}})));
  EXPECT_FALSE(conjugate_equal(word(3, {{0}, {1}}), word(3, {{0}})));
}

TEST(Conjugacy, CyclicReductionIsMinimal) {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 1500; ++t) {
    auto ctx = GroupContext::make(2 + t % 3, 1, 2);
    auto u = testing::random_word(rng, ctx, 6);
    auto c = cyclic_reduce(u);
    EXPECT_TRUE(conjugate_equal(u, c));
    EXPECT_TRUE(testing::brute_force_conjugate(u, c, 4));
    // No conjugate reachable by the oracle is shorter.
    auto shorter = testing::random_word(rng, ctx, c.letters.size() > 0 ? c.letters.size() - 1 : 0);
    if (reduce(shorter).letters.size() < c.letters.size())
      EXPECT_FALSE(testing::brute_force_conjugate(u, shorter, 4));
  }
}

// Shortest conjugators between words of length <= 6 have length <= 5, so this
// oracle is complete at these sizes.
TEST(Conjugacy, AgreesWithCompleteOracle) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 3000; ++t) {
    auto ctx = GroupContext::make(2 + t % 3, 1, 2);
    auto u = testing::random_word(rng, ctx, 6);
    Word v = testing::random_word(rng, ctx, 6);
    if (t % 2) {
      // Wrap a rotation of u's core in a different prefix.
      auto c = cyclic_reduce(u);
      if (!c.letters.empty())
        std::rotate(c.letters.begin(), c.letters.begin() + static_cast<std::ptrdiff_t>(rng() % c.letters.size()),
                    c.letters.end());
      auto g = testing::random_word(rng, ctx, 3);
      Word w{ctx, {}};
      w.letters.assign(g.letters.rbegin(), g.letters.rend());
      w.letters.insert(w.letters.end(), c.letters.begin(), c.letters.end());
      w.letters.insert(w.letters.end(), g.letters.begin(), g.letters.end());
      v = reduce(w);
      if (v.letters.size() > 6) continue;
    }
    EXPECT_EQ(conjugate_equal(u, v), testing::brute_force_conjugate(u, v, 5)) << render(u) << " vs " << render(v);
  }
}

TEST(Slide, Examples) {
  auto w3 = word(3, {{0}, {1}});
  EXPECT_EQ(slide(w3, 3), word(3, {{1}, {0}}));
  EXPECT_EQ(slide(slide(abda(), 4), 4), abda());
  EXPECT_EQ(slide(word(4, {{0, 0}, {0, 1}}), 3), word(4, {{1, 0}, {1, 1}}));
  EXPECT_THROW(slide(w3, 1), PreconditionError);
}

TEST(SlideConjugacy, Examples) {
  EXPECT_TRUE(slide_conjugacy_equal(abda(), bd()));
  EXPECT_TRUE(slide_conjugacy_equal(word(3, {{0}, {1}}), word(3, {{1}, {0}})));
  EXPECT_FALSE(slide_conjugacy_equal(word(3, {{0}, {1}, {0}, {1}}), word(3, {{0}, {1}})));
}

TEST(SlideConjugacy, EquivalenceRelation) {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 3000; ++t) {
    auto ctx = GroupContext::make(3 + t % 2, 1, 2);
    auto u = testing::random_word(rng, ctx, 4);
    auto v = apply_mask(testing::random_word(rng, ctx, 4), rng() % 4);
    auto w = testing::random_word(rng, ctx, 4);
    EXPECT_TRUE(slide_conjugacy_equal(u, u));
    EXPECT_EQ(slide_conjugacy_equal(u, v), slide_conjugacy_equal(v, u));
    if (slide_conjugacy_equal(u, v) && slide_conjugacy_equal(v, w)) EXPECT_TRUE(slide_conjugacy_equal(u, w));
    EXPECT_EQ(slide_conjugacy_equal(u, v), canonical_class_word(u) == canonical_class_word(v));
  }
}

TEST(LetterIndex, Examples) {
  EXPECT_EQ(letter_index(make_letter({0, 0})), 0u);
  EXPECT_EQ(letter_index(make_letter({0, 1})), 2u);
  EXPECT_EQ(letter_index(make_letter({1, 1})), 3u);
}

TEST(LetterIndex, Bijective) {
  for (std::size_t width = 0; width <= 6; ++width) {
    std::set<std::size_t> seen;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << width); ++b) {
      std::vector<int> tuple;
      for (std::size_t r = 0; r < width; ++r) tuple.push_back(static_cast<int>((b >> r) & 1u));
      auto x = make_letter(tuple);
      EXPECT_EQ(x.width, width);
      seen.insert(letter_index(x));
    }
    EXPECT_EQ(seen.size(), std::size_t{1} << width);
    EXPECT_EQ(*seen.rbegin(), (std::size_t{1} << width) - 1);
  }
}

TEST(ClassWord, Examples) {
  EXPECT_EQ(canonical_class_word(abda()), canonical_class_word(bd()));
  std::set<std::string> candidates;
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    auto c = cyclic_reduce(apply_mask(bd(), mask));
    for (std::size_t r = 0; r < c.letters.size(); ++r) {
      auto rot = c;
      std::rotate(rot.letters.begin(), rot.letters.begin() + static_cast<std::ptrdiff_t>(r), rot.letters.end());
      candidates.insert(render(rot));
    }
  }
  // Masks 0 and 1 (and 2 and 3) give the same pair of rotations.
  EXPECT_EQ(candidates.size(), 4u);
  auto least = canonical_class_word(bd());
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    auto c = cyclic_reduce(apply_mask(bd(), mask));
    for (std::size_t r = 0; r < c.letters.size(); ++r) {
      auto rot = c;
      std::rotate(rot.letters.begin(), rot.letters.begin() + static_cast<std::ptrdiff_t>(r), rot.letters.end());
      EXPECT_LE(least.letters, rot.letters);
    }
  }
  EXPECT_TRUE(canonical_class_word(word(4, {})).letters.empty());
  auto once = canonical_class_word(word(3, {{0}, {1}}));
  EXPECT_EQ(canonical_class_word(once), once);
}

TEST(Orbit, OneEntryPerMask) {
  auto orbit = slide_orbit(abda());
  ASSERT_EQ(orbit.size(), 4u);
  for (std::uint64_t m = 0; m < 4; ++m) {
    EXPECT_EQ(orbit[m].mask, m);
    EXPECT_EQ(orbit[m].representative, least_rotation(cyclic_reduce(apply_mask(abda(), m))));
  }
  EXPECT_EQ(slide_orbit(word(2, {})).size(), 1u);
}

TEST(Render, Forms) {
  EXPECT_EQ(render(word(4, {})), "1");
  EXPECT_EQ(render(bd()), "(0,1)·(1,1)");
  EXPECT_EQ(render(make_letter({})), "()");
}

}  // namespace
}  // namespace freelink
