/**
 * @file test_symfun.cpp
 * @brief Binomials, Wronski / elementary / tau against brute-force oracles.
 */
#include "foliation/symfun.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <vector>

using foliation::Int;
using foliation::MultiDegree;

namespace {

// Sum over exponent tuples e with |e| = delta of prod k_j^{e_j}.
Int wronski_by_tuples(int delta, const std::vector<int>& k) {
  Int total = 0;
  std::function<void(std::size_t, int, Int)> rec = [&](std::size_t j, int left, Int prod) {
    if (j + 1 == k.size()) {
      total += prod * foliation::ipow(Int(k[j]), left);
      return;
    }
    for (int e = 0; e <= left; ++e) rec(j + 1, left - e, prod * foliation::ipow(Int(k[j]), e));
  };
  rec(0, delta, 1);
  return total;
}

// Sum over i-subsets of the product of their entries.
Int elementary_by_subsets(int i, const std::vector<int>& k) {
  Int total = 0;
  const int d = static_cast<int>(k.size());
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) != i) continue;
    Int prod = 1;
    for (int j = 0; j < d; ++j)
      if (mask & (1u << j)) prod *= k[j];
    total += prod;
  }
  return total;
}

// Coefficients of (1+h)^{n+1} / prod (1 + k_j h) up to h^top by long division.
std::vector<Int> tau_series(int n, const std::vector<int>& k, int top) {
  std::vector<Int> num(static_cast<std::size_t>(top + 1), Int(0));
  for (int i = 0; i <= top; ++i) num[i] = foliation::binomial(n + 1, i);
  for (int kj : k) {
    // divide by (1 + kj h)
    for (int i = 1; i <= top; ++i) num[i] -= kj * num[i - 1];
  }
  return num;
}

std::vector<std::vector<int>> small_degrees() {
  std::vector<std::vector<int>> out;
  for (int d = 1; d <= 4; ++d) {
    std::vector<int> cur(static_cast<std::size_t>(d), 1);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == d) {
        out.push_back(cur);
        return;
      }
      for (int v = 1; v <= 4; ++v) {
        cur[pos] = v;
        rec(pos + 1);
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace

TEST(Binomial, VanishingConvention) {
  EXPECT_EQ(foliation::binomial(5, 2), 10);
  EXPECT_EQ(foliation::binomial(5, 0), 1);
  EXPECT_EQ(foliation::binomial(5, 5), 1);
  EXPECT_EQ(foliation::binomial(5, -1), 0);
  EXPECT_EQ(foliation::binomial(2, 3), 0);
  EXPECT_EQ(foliation::binomial(0, 0), 1);
  EXPECT_THROW(foliation::binomial(-1, 0), std::invalid_argument);
}

TEST(Binomial, LargeExact) {
  EXPECT_EQ(foliation::binomial(100, 50).str(), "100891344545564193334812497256");
}

TEST(MultiDegree, Validation) {
  EXPECT_THROW(MultiDegree(std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(MultiDegree({1, 0}), std::invalid_argument);
  EXPECT_THROW(MultiDegree::linear(0), std::invalid_argument);
  const MultiDegree md{2, 3};
  EXPECT_EQ(md.length(), 2);
  EXPECT_EQ(md.degree(), 6);
  EXPECT_FALSE(md.is_linear());
  EXPECT_TRUE(MultiDegree::linear(3).is_linear());
  EXPECT_EQ(md.str(), "2,3");
}

TEST(Wronski, SmallValues) {
  EXPECT_EQ(foliation::wronski(0, {1, 1}), 1);
  EXPECT_EQ(foliation::wronski(2, {1, 1}), 3);
  EXPECT_EQ(foliation::wronski(3, {1, 1}), 4);
  EXPECT_EQ(foliation::wronski(-1, {1, 1}), 0);
  EXPECT_EQ(foliation::wronski(2, {2, 3}), 4 + 6 + 9);
}

TEST(Wronski, MatchesTupleEnumeration) {
  for (const auto& k : small_degrees())
    for (int delta = 0; delta <= 6; ++delta)
      EXPECT_EQ(foliation::wronski(delta, MultiDegree(k)), wronski_by_tuples(delta, k))
          << MultiDegree(k) << " delta=" << delta;
}

TEST(Elementary, MatchesSubsetEnumeration) {
  for (const auto& k : small_degrees())
    for (int i = -1; i <= static_cast<int>(k.size()) + 1; ++i) {
      const Int expected = i < 0 ? Int(0) : elementary_by_subsets(i, k);
      EXPECT_EQ(foliation::elementary(i, MultiDegree(k)), expected) << MultiDegree(k) << " i=" << i;
    }
}

TEST(Tau, Examples) {
  EXPECT_EQ(foliation::tau(0, 5, {2, 3}), 1);
  EXPECT_EQ(foliation::tau(1, 3, {1, 2}), 1);
  for (int n = 3; n <= 8; ++n)
    for (int d = 1; d <= n - 1; ++d)
      for (int i = 0; i <= n; ++i)
        EXPECT_EQ(foliation::tau(i, n, MultiDegree::linear(d)), foliation::binomial(n + 1 - d, i));
  EXPECT_THROW(foliation::tau(1, 2, {1, 1, 1}), std::invalid_argument);
  EXPECT_EQ(foliation::tau(-1, 3, {1, 1}), 0);
}

TEST(Tau, MatchesPowerSeries) {
  for (const auto& k : small_degrees())
    for (int n = static_cast<int>(k.size()); n <= 7; ++n) {
      const auto series = tau_series(n, k, n + 2);
      for (int i = 0; i <= n + 2; ++i) EXPECT_EQ(foliation::tau(i, n, MultiDegree(k)), series[i]);
    }
}

TEST(SymmetricTables, FallbackMatchesDirect) {
  const MultiDegree md{1, 2, 3};
  const foliation::SymmetricTables t(5, md, 3);
  for (int i = -1; i <= 10; ++i) {
    EXPECT_EQ(t.wronski(i), foliation::wronski(i, md));
    EXPECT_EQ(t.tau(i), foliation::tau(i, 5, md));
    EXPECT_EQ(t.elementary(i), foliation::elementary(i, md));
  }
}

TEST(SymmetricIdentity, AlternatingSumVanishes) {
  for (const auto& k : small_degrees()) {
    const MultiDegree md(k);
    for (int m = 1; m <= 12; ++m) {
      Int s = 0;
      for (int j = 0; j <= m; ++j) s += foliation::sign_pow(j) * foliation::elementary(j, md) * foliation::wronski(m - j, md);
      EXPECT_EQ(s, 0) << md << " m=" << m;
    }
  }
}

TEST(SymmetricIdentity, HandExpansion) {
  // W_2 - sigma_1 W_1 + sigma_2 W_0 = 3 - 4 + 1 for (1,1)
  const MultiDegree md{1, 1};
  EXPECT_EQ(foliation::wronski(2, md), 3);
  EXPECT_EQ(foliation::elementary(1, md) * foliation::wronski(1, md), 4);
  EXPECT_EQ(foliation::elementary(2, md), 1);
}

TEST(Whitney, BinomialSplits) {
  for (const auto& k : small_degrees())
    for (int n = static_cast<int>(k.size()) + 1; n <= 7; ++n) {
      const MultiDegree md(k);
      for (int j = 0; j <= n + 1; ++j) {
        Int s = 0;
        for (int a = 0; a <= j; ++a) s += foliation::elementary(a, md) * foliation::tau(j - a, n, md);
        EXPECT_EQ(s, foliation::binomial(n + 1, j)) << md << " n=" << n << " j=" << j;
      }
    }
}
