// Copyright 2026 The Loopsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "loopsim/rating_store.hpp"
#include "test_util.hpp"

namespace loopsim {
namespace {

using testing::make_store;

TEST(RatingStore, InsertAndLookup) {
  RatingStore s = make_store(2, 3, {{1, 2, 4}, {2, 3, 1}, {1, 1, 5}});
  EXPECT_EQ(s.num_ratings(), 3u);
  EXPECT_EQ(s.rating(0, 1), 4);
  EXPECT_FALSE(s.rating(1, 0).has_value());
  ASSERT_EQ(s.profile(0).size(), 2u);
  EXPECT_EQ(s.profile(0)[0].item, 0u);
  EXPECT_EQ(s.profile(0)[1].item, 1u);
  EXPECT_EQ(s.profile(0)[0].origin, kInitialOrigin);
  EXPECT_FALSE(s.find_user(99).has_value());
}

TEST(RatingStore, RejectsInvalidInsertions) {
  RatingStore s = make_store(2, 2, {{1, 1, 3}});
  EXPECT_THROW(s.insert(0, 0, 4), DuplicateRatingError);
  EXPECT_THROW(s.insert(0, 1, 6), RatingRangeError);
  EXPECT_THROW(s.insert(0, 1, 0), RatingRangeError);
  EXPECT_THROW(s.insert(5, 1, 3), UnknownEntityError);
  EXPECT_THROW(s.insert(0, 7, 3), UnknownEntityError);
  EXPECT_EQ(s.num_ratings(), 1u);
}

TEST(RatingStore, RejectsUnsortedIds) {
  EXPECT_THROW(RatingStore({2, 1}, {1}), Error);
  EXPECT_THROW(RatingStore({1}, {1, 1}), Error);
}

TEST(RatingStore, SingleRatingHasZeroDeviation) {
  RatingStore s = make_store(1, 2, {{1, 1, 4}});
  EXPECT_EQ(s.user_mean(0), 4.0);
  EXPECT_EQ(s.user_stddev(0), 0.0);
  EXPECT_FALSE(s.item_mean(1).has_value());
}

TEST(RatingStore, CachedStatsMatchRecomputationUnderRandomInsertions) {
  std::mt19937_64 rng(11);
  const std::size_t m = 30, n = 40;
  RatingStore s = make_store(m, n, {});
  std::map<std::pair<UserIndex, ItemIndex>, int> truth;
  std::uniform_int_distribution<UserIndex> du(0, m - 1);
  std::uniform_int_distribution<ItemIndex> di(0, n - 1);
  std::uniform_int_distribution<int> dr(1, 5);
  for (int step = 0; step < 600; ++step) {
    const UserIndex u = du(rng);
    const ItemIndex i = di(rng);
    const int r = dr(rng);
    if (truth.count({u, i})) {
      EXPECT_THROW(s.insert(u, i, r), DuplicateRatingError);
      continue;
    }
    s.insert(u, i, r, step % 3);
    truth[{u, i}] = r;

    // Recompute the touched user and item from scratch.
    std::vector<double> ur, ir;
    for (const auto& [key, val] : truth) {
      if (key.first == u) ur.push_back(val);
      if (key.second == i) ir.push_back(val);
    }
    double mean = 0.0;
    for (double x : ur) mean += x;
    mean /= ur.size();
    double var = 0.0;
    for (double x : ur) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / ur.size());
    double imean = 0.0;
    for (double x : ir) imean += x;
    imean /= ir.size();
    ASSERT_NEAR(s.user_mean(u), mean, 1e-9);
    ASSERT_NEAR(s.user_stddev(u), sd, 1e-9);
    ASSERT_NEAR(*s.item_mean(i), imean, 1e-9);
    ASSERT_EQ(s.user_count(u), ur.size());
    ASSERT_EQ(s.item_count(i), ir.size());
  }
  double total = 0.0;
  for (const auto& [key, val] : truth) total += val;
  EXPECT_NEAR(s.global_mean(), total / truth.size(), 1e-9);
  EXPECT_EQ(s.num_ratings(), truth.size());
  for (UserIndex u = 0; u < m; ++u) {
    auto p = s.profile(u);
    for (std::size_t k = 1; k < p.size(); ++k) {
      EXPECT_LT(p[k - 1].item, p[k].item);
    }
  }
}

TEST(RatingStore, EqualityIncludesOrigin) {
  RatingStore a = make_store(1, 2, {});
  RatingStore b = make_store(1, 2, {});
  a.insert(0, 0, 3, 0);
  b.insert(0, 0, 3, 1);
  EXPECT_FALSE(a == b);
  RatingStore c = make_store(1, 2, {});
  c.insert(0, 0, 3, 0);
  EXPECT_TRUE(a == c);
}

}  // namespace
}  // namespace loopsim
