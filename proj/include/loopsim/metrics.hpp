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

#ifndef LOOPSIM_METRICS_HPP_
#define LOOPSIM_METRICS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "loopsim/dataset.hpp"
#include "loopsim/rating_store.hpp"
#include "loopsim/recommender.hpp"

namespace loopsim {

inline constexpr double kDefaultKlEpsilon = 1e-9;

// Item popularity phi(i) = (ratings of i) / (number of users).
struct PopularityTable {
  std::vector<std::size_t> counts;
  std::vector<double> phi;
  std::size_t num_users = 0;
  std::size_t total = 0;  // sum of counts

  static PopularityTable from_store(const RatingStore& store);
};

// Interaction-weighted mean popularity: sum over ratings (u, i) of phi(i),
// divided by the number of ratings. `popularity` may be frozen from an
// earlier store with the same item space. Throws on an empty store.
double average_data_popularity(const RatingStore& store,
                               const PopularityTable& popularity);
double average_data_popularity(const RatingStore& store);

// Mean of phi over all n items.
double item_weighted_popularity(const PopularityTable& popularity);

// Mean phi over every slot of every list; nullopt when all lists are empty.
std::optional<double> average_recommendation_popularity(
    std::span<const RankedList> lists, const PopularityTable& popularity);

// Distinct recommended items / catalog size.
double aggregate_diversity(std::span<const RankedList> lists,
                           std::size_t num_items);

struct GenreDistribution {
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
  double sum() const;
};

// Builds a distribution where each added item spreads mass 1 equally over
// its genres; finish() divides by the number of items added.
class GenreAccumulator {
 public:
  explicit GenreAccumulator(const Catalog& catalog);

  void add(ItemIndex item);
  std::size_t count() const { return count_; }
  // Throws when nothing was added.
  GenreDistribution finish() const;

 private:
  const Catalog* catalog_;
  std::vector<double> mass_;
  std::size_t count_ = 0;
};

GenreDistribution genre_distribution(std::span<const ItemIndex> items,
                                     const Catalog& catalog);
GenreDistribution genre_distribution(std::span<const RatingEntry> profile,
                                     const Catalog& catalog);

// KL(P || Q) in nats after adding `epsilon` to every entry of both
// arguments and renormalizing. Throws on mismatched sizes.
double kl_divergence(const GenreDistribution& p, const GenreDistribution& q,
                     double epsilon = kDefaultKlEpsilon);

// Genre preferences at the start of the simulation: per user and for the
// whole population.
struct InitialPreferences {
  std::vector<std::optional<GenreDistribution>> per_user;
  GenreDistribution population;

  static InitialPreferences from_store(const RatingStore& initial,
                                       const Catalog& catalog);
};

// KL(G_u^initial || G_u^now). Users without an initial distribution or an
// empty current profile give nullopt.
std::optional<double> taste_drift(UserIndex user, const RatingStore& store,
                                  const InitialPreferences& initial,
                                  const Catalog& catalog,
                                  double epsilon = kDefaultKlEpsilon);

// Genre distribution of all ratings by users of `group` (nullopt = every
// user). nullopt when the group has no ratings.
std::optional<GenreDistribution> group_genre_distribution(
    const RatingStore& store, const Catalog& catalog,
    std::optional<UserGroup> group);

// KL(G_M || G_F); nullopt when either group has no ratings.
std::optional<double> group_divergence(const RatingStore& store,
                                       const Catalog& catalog,
                                       double epsilon = kDefaultKlEpsilon);

// KL(G_population || G_group) with G_population taken from the initial
// data; `group` nullopt means every user.
std::optional<double> group_population_divergence(
    const GenreDistribution& population, const RatingStore& store,
    const Catalog& catalog, std::optional<UserGroup> group,
    double epsilon = kDefaultKlEpsilon);

struct DriftSummary {
  std::optional<double> all;
  std::optional<double> male;
  std::optional<double> female;
};

// Mean taste drift over all users and over each group.
DriftSummary per_group_taste_drift(const RatingStore& store,
                                   const InitialPreferences& initial,
                                   const Catalog& catalog,
                                   double epsilon = kDefaultKlEpsilon);

struct Theta {
  double absolute;  // P_R - P_D
  double relative;  // (P_R - P_D) / P_D
};

// Requires data_popularity > 0.
Theta compute_theta(double rec_popularity, double data_popularity);

// Spearman rank correlation with average ranks for ties. Throws for fewer
// than two points or mismatched lengths; returns 0 if either side is
// constant.
double spearman_correlation(std::span<const double> x,
                            std::span<const double> y);

}  // namespace loopsim

#endif  // LOOPSIM_METRICS_HPP_
