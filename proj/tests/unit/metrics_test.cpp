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
#include <random>
#include <set>

#include "loopsim/metrics.hpp"
#include "loopsim/most_popular.hpp"
#include "loopsim/synthetic.hpp"
#include "test_util.hpp"

namespace loopsim {
namespace {

using testing::make_catalog;
using testing::make_store;

RankedList list_of(std::initializer_list<ItemIndex> items) {
  RankedList l;
  for (ItemIndex i : items) l.entries.push_back({i, 0.0});
  return l;
}

GenreDistribution dist(std::vector<double> p) { return {std::move(p)}; }

TEST(Popularity, FullPopularityItem) {
  RatingStore s = make_store(2, 1, {{1, 1, 3}, {2, 1, 4}});
  EXPECT_EQ(average_data_popularity(s), 1.0);
}

TEST(Popularity, InteractionWeightedAverage) {
  RatingStore s = make_store(2, 2, {{1, 1, 3}, {2, 1, 4}, {1, 2, 2}});
  EXPECT_NEAR(average_data_popularity(s), 5.0 / 6.0, 1e-15);
  auto table = PopularityTable::from_store(s);
  EXPECT_EQ(table.phi[0], 1.0);
  EXPECT_EQ(table.phi[1], 0.5);
  EXPECT_EQ(item_weighted_popularity(table), 0.75);
}

TEST(Popularity, EmptyStoreThrows) {
  EXPECT_THROW(average_data_popularity(make_store(2, 2, {})), Error);
}

TEST(Popularity, MatchesTwoPassOracleOnSyntheticCorpus) {
  const RatingStore s = generate_synthetic({}).ratings;
  std::vector<double> counts(s.num_items(), 0.0);
  for (UserIndex u = 0; u < s.num_users(); ++u) {
    for (const auto& e : s.profile(u)) counts[e.item] += 1.0;
  }
  double acc = 0.0;
  for (UserIndex u = 0; u < s.num_users(); ++u) {
    for (const auto& e : s.profile(u)) acc += counts[e.item] / s.num_users();
  }
  EXPECT_NEAR(average_data_popularity(s), acc / s.num_ratings(), 1e-9);
}

TEST(RecommendationPopularity, Examples) {
  RatingStore s = make_store(5, 3, {{1, 1, 1}, {2, 1, 1}, {1, 2, 1},
                                    {2, 3, 1}, {3, 1, 1}});
  // phi = (0.6, 0.2, 0.2).
  auto table = PopularityTable::from_store(s);
  std::vector<RankedList> same = {list_of({0}), list_of({0})};
  EXPECT_DOUBLE_EQ(*average_recommendation_popularity(same, table), 0.6);
  RatingStore t = make_store(5, 2, {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}});
  auto table2 = PopularityTable::from_store(t);  // phi = (0.4, 0.2)
  std::vector<RankedList> two = {list_of({0}), list_of({1})};
  EXPECT_NEAR(*average_recommendation_popularity(two, table2), 0.3, 1e-15);
  std::vector<RankedList> none = {list_of({}), list_of({})};
  EXPECT_FALSE(average_recommendation_popularity(none, table2).has_value());
}

TEST(AggregateDiversity, Examples) {
  std::vector<RankedList> same(4, list_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_DOUBLE_EQ(aggregate_diversity(same, 50), 10.0 / 50.0);
  std::vector<RankedList> cover = {list_of({0, 1}), list_of({2, 3, 4})};
  EXPECT_EQ(aggregate_diversity(cover, 5), 1.0);
}

TEST(AggregateDiversity, MostPopularMatchesSetUnion) {
  const RatingStore s = generate_synthetic({}).ratings;
  MostPopular mp;
  mp.fit(s, 0, 0);
  std::vector<RankedList> lists;
  std::set<ItemIndex> unioned;
  std::size_t max_profile = 0;
  for (UserIndex u = 0; u < s.num_users(); ++u) {
    lists.push_back(mp.recommend(u, 10, s.profile(u)));
    for (const auto& e : lists.back().entries) unioned.insert(e.item);
    max_profile = std::max(max_profile, s.user_count(u));
  }
  const double div = aggregate_diversity(lists, s.num_items());
  EXPECT_DOUBLE_EQ(div, double(unioned.size()) / s.num_items());
  EXPECT_LE(unioned.size(), 10 + max_profile);
}

TEST(GenreDistribution, Examples) {
  RatingStore s = make_store(1, 3, {});
  Catalog c = make_catalog(s, {UserGroup::kMale}, {{0, 1}, {0}, {0, 1, 2}},
                           4);
  std::vector<ItemIndex> one = {0};
  auto p = genre_distribution(one, c);
  EXPECT_EQ(p.p, (std::vector<double>{0.5, 0.5, 0.0, 0.0}));
  std::vector<ItemIndex> twice = {1, 1};
  EXPECT_EQ(genre_distribution(twice, c).p[0], 1.0);
  std::vector<ItemIndex> mixed = {2, 1};
  auto q = genre_distribution(mixed, c);
  EXPECT_NEAR(q.p[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(q.p[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(q.p[2], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(q.sum(), 1.0, 1e-15);
  EXPECT_THROW(genre_distribution(std::span<const ItemIndex>{}, c), Error);
}

TEST(KlDivergence, Examples) {
  auto p = dist({0.2, 0.3, 0.5});
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  EXPECT_NEAR(kl_divergence(dist({1.0, 0.0}), dist({0.5, 0.5})),
              std::log(2.0), 1e-6);
  EXPECT_THROW(kl_divergence(dist({1.0}), dist({0.5, 0.5})), Error);
}

TEST(KlDivergence, NonNegativeOnRandomPairs) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution zero(0.2);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> a(18), b(18);
    double sa = 0.0, sb = 0.0;
    for (int g = 0; g < 18; ++g) {
      a[g] = zero(rng) ? 0.0 : u(rng);
      b[g] = zero(rng) ? 0.0 : u(rng);
      sa += a[g];
      sb += b[g];
    }
    if (sa == 0.0 || sb == 0.0) continue;
    for (int g = 0; g < 18; ++g) {
      a[g] /= sa;
      b[g] /= sb;
    }
    EXPECT_GE(kl_divergence(dist(a), dist(b)), 0.0);
  }
}

// Two users, genres {a, b}; items 1 = {a}, 2 = {b}, 3 = {a, b}.
struct DriftFixture {
  RatingStore initial = make_store(2, 3, {{1, 1, 4}, {2, 2, 4}});
  Catalog catalog = make_catalog(initial,
                                 {UserGroup::kMale, UserGroup::kFemale},
                                 {{0}, {1}, {0, 1}}, 2);
  InitialPreferences prefs = InitialPreferences::from_store(initial, catalog);
};

TEST(TasteDrift, ZeroAtStartAndForUnchangedUsers) {
  DriftFixture f;
  EXPECT_EQ(*taste_drift(0, f.initial, f.prefs, f.catalog), 0.0);
  RatingStore next = f.initial;
  next.insert(1, 2, 5, 1);
  EXPECT_EQ(*taste_drift(0, next, f.prefs, f.catalog), 0.0);
  DriftSummary d0 = per_group_taste_drift(f.initial, f.prefs, f.catalog);
  EXPECT_EQ(*d0.male, 0.0);
  EXPECT_EQ(*d0.female, 0.0);
}

TEST(TasteDrift, HandComputedShift) {
  DriftFixture f;
  RatingStore next = f.initial;
  next.insert(1, 2, 5, 1);  // female user adds item 3 = {a, b}
  // G^1 = (0, 1); G^t = (0.25, 0.75). Smoothed with eps = 1e-9.
  const double e = 1e-9;
  const double p0 = e / (1 + 2 * e), p1 = (1 + e) / (1 + 2 * e);
  const double q0 = (0.25 + e) / (1 + 2 * e), q1 = (0.75 + e) / (1 + 2 * e);
  const double want = p0 * std::log(p0 / q0) + p1 * std::log(p1 / q1);
  EXPECT_NEAR(*taste_drift(1, next, f.prefs, f.catalog), want, 1e-12);
  DriftSummary d = per_group_taste_drift(next, f.prefs, f.catalog);
  EXPECT_EQ(*d.male, 0.0);
  EXPECT_GT(*d.female, 0.0);
  EXPECT_NEAR(*d.all, want / 2.0, 1e-12);
}

TEST(GroupDivergence, IdenticalGroupsGiveZero) {
  RatingStore s = make_store(2, 2, {{1, 1, 4}, {2, 1, 3}});
  Catalog c = make_catalog(s, {UserGroup::kMale, UserGroup::kFemale},
                           {{0}, {1}}, 2);
  EXPECT_EQ(*group_divergence(s, c), 0.0);
}

TEST(GroupDivergence, DisjointGroupsGiveLargeFiniteValue) {
  RatingStore s = make_store(2, 2, {{1, 1, 4}, {2, 2, 3}});
  Catalog c = make_catalog(s, {UserGroup::kMale, UserGroup::kFemale},
                           {{0}, {1}}, 2);
  const double kl = *group_divergence(s, c);
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_GT(kl, 15.0);
  EXPECT_NEAR(kl, std::log(1.0 / 1e-9), 1.0);
}

TEST(GroupDivergence, EmptyGroupIsNotApplicable) {
  RatingStore s = make_store(2, 2, {{1, 1, 4}, {2, 2, 3}});
  Catalog c = make_catalog(s, {UserGroup::kMale, UserGroup::kMale},
                           {{0}, {1}}, 2);
  EXPECT_FALSE(group_divergence(s, c).has_value());
  EXPECT_FALSE(group_population_divergence(dist({0.5, 0.5}), s, c,
                                           UserGroup::kFemale)
                   .has_value());
}

TEST(GroupDivergence, MatchesRecomputationFromRawDumps) {
  const Dataset ds = generate_synthetic({});
  std::vector<double> male(ds.catalog.genres.size());
  std::vector<double> female(male.size());
  double nm = 0.0, nf = 0.0;
  for (UserIndex u = 0; u < ds.ratings.num_users(); ++u) {
    const bool is_f = ds.catalog.users[u].group == UserGroup::kFemale;
    for (const auto& e : ds.ratings.profile(u)) {
      const auto& g = ds.catalog.items[e.item].genres;
      for (auto k : g) (is_f ? female : male)[k] += 1.0 / g.size();
      (is_f ? nf : nm) += 1.0;
    }
  }
  const double eps = 1e-9, k = double(male.size());
  double kl = 0.0;
  for (std::size_t g = 0; g < male.size(); ++g) {
    const double p = (male[g] / nm + eps) / (1 + k * eps);
    const double q = (female[g] / nf + eps) / (1 + k * eps);
    kl += p * std::log(p / q);
  }
  EXPECT_NEAR(*group_divergence(ds.ratings, ds.catalog), kl, 1e-9);
}

TEST(GroupPopulationDivergence, StartOfRunIsZero) {
  DriftFixture f;
  EXPECT_EQ(*group_population_divergence(f.prefs.population, f.initial,
                                         f.catalog, std::nullopt),
            0.0);
  RatingStore next = f.initial;
  next.insert(0, 1, 3, 1);  // male user adds item 2 = {b}
  // Population (0.5, 0.5); male group now (0.5, 0.5).
  EXPECT_NEAR(*group_population_divergence(f.prefs.population, next,
                                           f.catalog, UserGroup::kMale),
              0.0, 1e-15);
  const double e = 1e-9;
  const double p = (0.5 + e) / (1 + 2 * e);
  const double q0 = e / (1 + 2 * e), q1 = (1 + e) / (1 + 2 * e);
  const double want = p * std::log(p / q0) + p * std::log(p / q1);
  EXPECT_NEAR(*group_population_divergence(f.prefs.population, next,
                                           f.catalog, UserGroup::kFemale),
              want, 1e-9);
}

TEST(Theta, Examples) {
  Theta zero = compute_theta(0.2, 0.2);
  EXPECT_EQ(zero.absolute, 0.0);
  EXPECT_EQ(zero.relative, 0.0);
  Theta t = compute_theta(0.25, 0.20);
  EXPECT_NEAR(t.absolute, 0.05, 1e-15);
  EXPECT_NEAR(t.relative, 0.25, 1e-14);
  EXPECT_THROW(compute_theta(0.1, 0.0), Error);
}

TEST(Spearman, MonotoneAndTied) {
  std::vector<double> t = {1, 2, 3, 4, 5};
  std::vector<double> up = {0.1, 0.4, 0.5, 0.9, 1.0};
  std::vector<double> down = {5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman_correlation(t, up), 1.0);
  EXPECT_DOUBLE_EQ(spearman_correlation(t, down), -1.0);
  // Ranks of {1, 2, 2, 3} are {1, 2.5, 2.5, 4}.
  std::vector<double> x = {1, 2, 3, 4};
  std::vector<double> y = {1, 2, 2, 3};
  const double rx[] = {1, 2, 3, 4}, ry[] = {1, 2.5, 2.5, 4};
  double sxy = 0, sxx = 0, syy = 0;
  for (int k = 0; k < 4; ++k) {
    sxy += (rx[k] - 2.5) * (ry[k] - 2.5);
    sxx += (rx[k] - 2.5) * (rx[k] - 2.5);
    syy += (ry[k] - 2.5) * (ry[k] - 2.5);
  }
  EXPECT_NEAR(spearman_correlation(x, y), sxy / std::sqrt(sxx * syy), 1e-15);
  EXPECT_THROW(spearman_correlation(x, down), Error);
}

}  // namespace
}  // namespace loopsim
