#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sullivan/cohomology.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/serialize.hpp"

using namespace sullivan;

namespace {

AlgebraPtr sphere2() { return make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}}); }

// Sign of sorting a word of generator occurrences into index order, by bubble
// sort, counting swaps of two odd letters.
int bubble_sign(const GeneratorSet& gs, std::vector<std::uint32_t> word) {
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
      if (word[j] > word[j + 1]) {
        if (gs[word[j]].odd() && gs[word[j + 1]].odd()) sign = -sign;
        std::swap(word[j], word[j + 1]);
      }
  for (std::size_t j = 0; j + 1 < word.size(); ++j)
    if (word[j] == word[j + 1] && gs[word[j]].odd()) return 0;
  return sign;
}

}  // namespace

TEST(Kernel, OddGeneratorsAnticommute) {
  auto alg = make_algebra({{"x", 2}, {"p", 3}, {"q", 5}}, {});
  auto p = alg->gen("p"), q = alg->gen("q"), x = alg->gen("x");
  EXPECT_EQ(p * q, -(q * p));
  EXPECT_TRUE((p * p).is_zero());
  EXPECT_EQ(x * p, p * x);
  EXPECT_EQ((p * q).to_string(), "p*q");
  EXPECT_EQ((q * p).to_string(), "-p*q");
}

TEST(Kernel, KoszulSignMatchesBubbleSort) {
  auto alg = make_algebra({{"a", 3}, {"b", 5}, {"c", 2}, {"d", 7}, {"e", 9}}, {});
  const auto& gs = alg->generators();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint32_t> word;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) word.push_back(rng() % 5);
    RElement prod = RElement::one(alg->universe());
    for (auto g : word) prod = prod * alg->gen(g);
    int expected = bubble_sign(gs, word);
    if (expected == 0) {
      EXPECT_TRUE(prod.is_zero());
      continue;
    }
    ASSERT_EQ(prod.size(), 1u);
    EXPECT_EQ(prod.terms().begin()->second, Rational(expected));
  }
}

TEST(Kernel, DifferentialOnSphere) {
  auto alg = sphere2();
  EXPECT_EQ(differentiate(*alg, alg->gen("b")), alg->gen("a", 2));
  EXPECT_EQ(differentiate(*alg, alg->gen("a") * alg->gen("b")), alg->gen("a", 3));
  EXPECT_TRUE(check_structure(*alg).ok());
  EXPECT_TRUE(check_structure(*alg).minimal);
}

TEST(Kernel, CohomologyOfSmallModels) {
  auto s2 = sphere2();
  std::vector<std::size_t> dims;
  for (int k = 0; k <= 6; ++k) dims.push_back(cohomology_dim(*s2, k));
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0}));
  auto s3 = make_algebra({{"w", 3}}, {});
  EXPECT_EQ(cohomology_dim(*s3, 3), 1u);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(cohomology_dim(*s2, k, kDefaultMonomialBudget, RankMethod::modular), dims[k]);
}

TEST(Kernel, ExactnessOnSphere) {
  auto alg = sphere2();
  auto ans = solve_exactness(*alg, alg->gen("a", 2));
  ASSERT_TRUE(ans);
  EXPECT_EQ(differentiate(*alg, ans.preimage), alg->gen("a", 2));
  EXPECT_FALSE(solve_exactness(*alg, alg->gen("a")));
  EXPECT_EQ(solve_exactness(*alg, alg->gen("b")).reason, "not closed");
}

TEST(Kernel, JsonRoundTrip) {
  auto alg = make_algebra({{"a", 2}, {"b", 3}, {"c", 7}}, {{"b", "a^2"}, {"c", "2/3*a^4 - a*a^3"}});
  auto j = algebra_to_json(*alg);
  auto text = j.dump(2);
  auto back = algebra_from_string(text);
  EXPECT_TRUE(back == *alg);
  EXPECT_EQ(algebra_to_json(back).dump(2), text);
}
