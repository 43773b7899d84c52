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

#include "loopsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loopsim {

PopularityTable PopularityTable::from_store(const RatingStore& store) {
  PopularityTable t;
  t.num_users = store.num_users();
  t.counts.resize(store.num_items());
  t.phi.resize(store.num_items());
  for (ItemIndex i = 0; i < store.num_items(); ++i) {
    t.counts[i] = store.item_count(i);
    t.total += t.counts[i];
    t.phi[i] = t.num_users == 0 ? 0.0
                                : static_cast<double>(t.counts[i]) /
                                      static_cast<double>(t.num_users);
  }
  return t;
}

double average_data_popularity(const RatingStore& store,
                               const PopularityTable& popularity) {
  if (store.num_ratings() == 0) {
    throw Error("average popularity of an empty store");
  }
  if (popularity.phi.size() != store.num_items()) {
    throw Error("popularity table does not match the store's items");
  }
  double sum = 0.0;
  for (ItemIndex i = 0; i < store.num_items(); ++i) {
    sum += static_cast<double>(store.item_count(i)) * popularity.phi[i];
  }
  return sum / static_cast<double>(store.num_ratings());
}

double average_data_popularity(const RatingStore& store) {
  return average_data_popularity(store, PopularityTable::from_store(store));
}

double item_weighted_popularity(const PopularityTable& popularity) {
  if (popularity.phi.empty()) throw Error("empty popularity table");
  return std::accumulate(popularity.phi.begin(), popularity.phi.end(), 0.0) /
         static_cast<double>(popularity.phi.size());
}

std::optional<double> average_recommendation_popularity(
    std::span<const RankedList> lists, const PopularityTable& popularity) {
  double sum = 0.0;
  std::size_t slots = 0;
  for (const RankedList& l : lists) {
    for (const RankedEntry& e : l.entries) {
      sum += popularity.phi[e.item];
      ++slots;
    }
  }
  if (slots == 0) return std::nullopt;
  return sum / static_cast<double>(slots);
}

double aggregate_diversity(std::span<const RankedList> lists,
                           std::size_t num_items) {
  if (num_items == 0) throw Error("aggregate diversity of an empty catalog");
  std::vector<bool> seen(num_items, false);
  std::size_t distinct = 0;
  for (const RankedList& l : lists) {
    for (const RankedEntry& e : l.entries) {
      if (!seen[e.item]) {
        seen[e.item] = true;
        ++distinct;
      }
    }
  }
  return static_cast<double>(distinct) / static_cast<double>(num_items);
}

double GenreDistribution::sum() const {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

GenreAccumulator::GenreAccumulator(const Catalog& catalog)
    : catalog_(&catalog), mass_(catalog.genres.size(), 0.0) {}

void GenreAccumulator::add(ItemIndex item) {
  const auto& genres = catalog_->items[item].genres;
  if (genres.empty()) throw Error("item without genres");
  const double share = 1.0 / static_cast<double>(genres.size());
  for (auto g : genres) mass_[g] += share;
  ++count_;
}

GenreDistribution GenreAccumulator::finish() const {
  if (count_ == 0) throw Error("genre distribution of an empty item set");
  GenreDistribution d{mass_};
  for (double& v : d.p) v /= static_cast<double>(count_);
  return d;
}

GenreDistribution genre_distribution(std::span<const ItemIndex> items,
                                     const Catalog& catalog) {
  GenreAccumulator acc(catalog);
  for (ItemIndex i : items) acc.add(i);
  return acc.finish();
}

GenreDistribution genre_distribution(std::span<const RatingEntry> profile,
                                     const Catalog& catalog) {
  GenreAccumulator acc(catalog);
  for (const RatingEntry& e : profile) acc.add(e.item);
  return acc.finish();
}

double kl_divergence(const GenreDistribution& p, const GenreDistribution& q,
                     double epsilon) {
  if (p.size() != q.size()) {
    throw Error("KL divergence over different genre vocabularies");
  }
  const double k = static_cast<double>(p.size());
  const double zp = p.sum() + k * epsilon;
  const double zq = q.sum() + k * epsilon;
  double kl = 0.0;
  for (std::size_t g = 0; g < p.size(); ++g) {
    const double ps = (p.p[g] + epsilon) / zp;
    const double qs = (q.p[g] + epsilon) / zq;
    kl += ps * std::log(ps / qs);
  }
  return std::max(0.0, kl);
}

InitialPreferences InitialPreferences::from_store(const RatingStore& initial,
                                                  const Catalog& catalog) {
  InitialPreferences out;
  out.per_user.resize(initial.num_users());
  GenreAccumulator population(catalog);
  for (UserIndex u = 0; u < initial.num_users(); ++u) {
    auto p = initial.profile(u);
    if (p.empty()) continue;
    out.per_user[u] = genre_distribution(p, catalog);
    for (const RatingEntry& e : p) population.add(e.item);
  }
  out.population = population.finish();
  return out;
}

std::optional<double> taste_drift(UserIndex user, const RatingStore& store,
                                  const InitialPreferences& initial,
                                  const Catalog& catalog, double epsilon) {
  const auto& start = initial.per_user[user];
  auto p = store.profile(user);
  if (!start || p.empty()) return std::nullopt;
  return kl_divergence(*start, genre_distribution(p, catalog), epsilon);
}

std::optional<GenreDistribution> group_genre_distribution(
    const RatingStore& store, const Catalog& catalog,
    std::optional<UserGroup> group) {
  GenreAccumulator acc(catalog);
  for (UserIndex u = 0; u < store.num_users(); ++u) {
    if (group && catalog.users[u].group != *group) continue;
    for (const RatingEntry& e : store.profile(u)) acc.add(e.item);
  }
  if (acc.count() == 0) return std::nullopt;
  return acc.finish();
}

std::optional<double> group_divergence(const RatingStore& store,
                                       const Catalog& catalog,
                                       double epsilon) {
  auto male = group_genre_distribution(store, catalog, UserGroup::kMale);
  auto female = group_genre_distribution(store, catalog, UserGroup::kFemale);
  if (!male || !female) return std::nullopt;
  return kl_divergence(*male, *female, epsilon);
}

std::optional<double> group_population_divergence(
    const GenreDistribution& population, const RatingStore& store,
    const Catalog& catalog, std::optional<UserGroup> group, double epsilon) {
  auto g = group_genre_distribution(store, catalog, group);
  if (!g) return std::nullopt;
  return kl_divergence(population, *g, epsilon);
}

DriftSummary per_group_taste_drift(const RatingStore& store,
                                   const InitialPreferences& initial,
                                   const Catalog& catalog, double epsilon) {
  double sum_all = 0.0, sum_m = 0.0, sum_f = 0.0;
  std::size_t n_all = 0, n_m = 0, n_f = 0;
  for (UserIndex u = 0; u < store.num_users(); ++u) {
    auto d = taste_drift(u, store, initial, catalog, epsilon);
    if (!d) continue;
    sum_all += *d;
    ++n_all;
    if (catalog.users[u].group == UserGroup::kMale) {
      sum_m += *d;
      ++n_m;
    } else if (catalog.users[u].group == UserGroup::kFemale) {
      sum_f += *d;
      ++n_f;
    }
  }
  auto mean = [](double s, std::size_t n) -> std::optional<double> {
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
  };
  return {mean(sum_all, n_all), mean(sum_m, n_m), mean(sum_f, n_f)};
}

Theta compute_theta(double rec_popularity, double data_popularity) {
  if (!(data_popularity > 0.0)) {
    throw Error("theta needs a positive data popularity");
  }
  const double gap = rec_popularity - data_popularity;
  return {gap, gap / data_popularity};
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t end = k;
    while (end + 1 < order.size() && v[order[end + 1]] == v[order[k]]) ++end;
    const double r = 0.5 * static_cast<double>(k + end) + 1.0;
    for (std::size_t q = k; q <= end; ++q) ranks[order[q]] = r;
    k = end + 1;
  }
  return ranks;
}

}  // namespace

double spearman_correlation(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error("spearman correlation needs two equal-length series");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace loopsim
