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

#include "loopsim/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "loopsim/rng.hpp"

namespace loopsim {
namespace {

constexpr const char* kGenreNames[] = {
    "Action",  "Adventure", "Animation", "Children's", "Comedy",
    "Crime",   "Documentary", "Drama",   "Fantasy",    "Film-Noir",
    "Horror",  "Musical",   "Mystery",   "Romance",    "Sci-Fi",
    "Thriller", "War",      "Western"};

// Relative genre frequency among items, roughly following the 1M catalog.
constexpr double kGenreFrequency[] = {5, 3, 1, 2, 10, 2, 1, 13, 1,
                                      0.5, 3, 1, 1, 4, 2, 4, 1, 0.6};

// Taste multipliers per group, indexed like kGenreNames.
constexpr double kMaleTaste[] = {2.5, 1.8, 0.8, 0.6, 1.0, 1.6, 1.0, 0.9, 1.0,
                                 1.4, 1.5, 0.5, 1.2, 0.5, 2.5, 1.8, 2.2, 1.8};
constexpr double kFemaleTaste[] = {0.6, 0.9, 1.6, 2.2, 1.4, 0.8, 1.0, 1.8, 1.4,
                                   0.8, 0.6, 2.5, 1.0, 2.8, 0.5, 0.9, 0.5,
                                   0.4};

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.num_genres == 0 || spec.num_genres > std::size(kGenreNames)) {
    throw Error("synthetic corpus supports 1 to 18 genres");
  }
  if (spec.num_users == 0 || spec.num_items < 2 * spec.min_profile) {
    throw Error(
        "synthetic corpus needs users and at least 2x min_profile items");
  }
  Rng rng = make_rng(spec.seed, Stream::kSynthetic, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = spec.num_items;
  const std::size_t g_count = spec.num_genres;

  Dataset ds;
  for (std::size_t g = 0; g < g_count; ++g) {
    ds.catalog.genres.emplace_back(kGenreNames[g]);
  }
  std::sort(ds.catalog.genres.begin(), ds.catalog.genres.end());
  // kGenreNames is already sorted, so genre index g is kGenreNames[g].

  std::discrete_distribution<std::size_t> pick_genre(
      kGenreFrequency, kGenreFrequency + g_count);
  std::vector<double> popularity(n);
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 1);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> quality(n);
  for (std::size_t i = 0; i < n; ++i) {
    popularity[i] =
        1.0 / std::pow(static_cast<double>(rank[i]), spec.popularity_exponent);
    quality[i] = 0.5 * normal(rng) + 0.3 * (1.0 - rank[i] / double(n));
    ItemMeta meta{static_cast<ItemId>(i + 1), {}};
    const std::size_t k = 1 + (unit(rng) < 0.45) + (unit(rng) < 0.15);
    while (meta.genres.size() < std::min(k, g_count)) {
      auto g = static_cast<std::uint16_t>(pick_genre(rng));
      if (std::find(meta.genres.begin(), meta.genres.end(), g) ==
          meta.genres.end()) {
        meta.genres.push_back(g);
      }
    }
    std::sort(meta.genres.begin(), meta.genres.end());
    ds.catalog.items.push_back(std::move(meta));
  }

  std::vector<UserId> user_ids(spec.num_users);
  std::iota(user_ids.begin(), user_ids.end(), 1);
  std::vector<ItemId> item_ids(n);
  std::iota(item_ids.begin(), item_ids.end(), 1);
  ds.ratings = RatingStore(user_ids, item_ids, RatingBounds{1, 5});

  std::vector<double> taste(g_count);
  std::vector<std::pair<double, ItemIndex>> keys(n);
  for (UserIndex u = 0; u < spec.num_users; ++u) {
    const bool female = unit(rng) < spec.female_fraction;
    ds.catalog.users.push_back(
        {user_ids[u], female ? UserGroup::kFemale : UserGroup::kMale});
    const double* base = female ? kFemaleTaste : kMaleTaste;
    for (std::size_t g = 0; g < g_count; ++g) {
      taste[g] = base[g] * std::exp(0.5 * normal(rng));
    }
    const double mean = female ? spec.mean_profile_female
                               : spec.mean_profile_male;
    std::exponential_distribution<double> extra(
        1.0 / std::max(1.0, mean - static_cast<double>(spec.min_profile)));
    const std::size_t size = std::min(
        n / 2, spec.min_profile + static_cast<std::size_t>(extra(rng)));
    const double bias = 0.4 * normal(rng);

    // Weighted sampling without replacement via exponential keys.
    for (ItemIndex i = 0; i < n; ++i) {
      double affinity = 0.0;
      for (auto g : ds.catalog.items[i].genres) affinity += taste[g];
      affinity /= static_cast<double>(ds.catalog.items[i].genres.size());
      const double w = popularity[i] * affinity;
      keys[i] = {std::log(unit(rng) + 1e-300) / w, i};
    }
    std::partial_sort(keys.begin(), keys.begin() + size, keys.end(),
                      [](const auto& a, const auto& b) {
                        return a.first > b.first;
                      });
    for (std::size_t k = 0; k < size; ++k) {
      const ItemIndex i = keys[k].second;
      const double omega = 3.6 + bias + quality[i] + 0.8 * normal(rng);
      const int r = static_cast<int>(
          std::clamp(std::round(omega), 1.0, 5.0));
      ds.ratings.insert(u, i, r);
    }
  }
  return ds;
}

void write_movielens(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const RatingStore& s = data.ratings;
  {
    std::ofstream out(dir / "ratings.dat", std::ios::binary);
    std::int64_t ts = 978300760;
    for (UserIndex u = 0; u < s.num_users(); ++u) {
      for (const RatingEntry& e : s.profile(u)) {
        out << s.user_id(u) << "::" << s.item_id(e.item)
            << "::" << e.rating << "::" << ts++ << '\n';
      }
    }
  }
  {
    std::ofstream out(dir / "users.dat", std::ios::binary);
    for (const UserMeta& m : data.catalog.users) {
      out << m.user_id << "::" << group_label(m.group) << "::25::0::00000\n";
    }
  }
  {
    std::ofstream out(dir / "movies.dat", std::ios::binary);
    for (const ItemMeta& m : data.catalog.items) {
      out << m.item_id << "::Movie " << m.item_id << " (2000)::";
      for (std::size_t k = 0; k < m.genres.size(); ++k) {
        if (k > 0) out << '|';
        out << data.catalog.genres[m.genres[k]];
      }
      out << '\n';
    }
  }
}

}  // namespace loopsim
