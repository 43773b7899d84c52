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

#ifndef LOOPSIM_DATASET_HPP_
#define LOOPSIM_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopsim/rating_store.hpp"
#include "loopsim/rng.hpp"

namespace loopsim {

enum class UserGroup : std::uint8_t { kMale, kFemale, kUnknown };

// "M" -> kMale, "F" -> kFemale, anything else -> kUnknown.
UserGroup parse_group(std::string_view label);
std::string_view group_label(UserGroup g);

struct UserMeta {
  UserId user_id;
  UserGroup group;
};

struct ItemMeta {
  ItemId item_id;
  std::vector<std::uint16_t> genres;  // indices into Catalog::genres, sorted
};

// User and item metadata aligned with a store's indices: users[u]
// describes store user index u and items[i] store item index i.
struct Catalog {
  std::vector<UserMeta> users;
  std::vector<ItemMeta> items;
  std::vector<std::string> genres;  // sorted vocabulary

  std::size_t count_users(UserGroup g) const;
  // Ratings in `store` given by users of group g.
  std::size_t count_ratings(const RatingStore& store, UserGroup g) const;
};

struct Dataset {
  RatingStore ratings;
  Catalog catalog;
};

struct MovieLensPaths {
  std::filesystem::path ratings;
  std::filesystem::path users;
  std::filesystem::path movies;

  // ratings.dat, users.dat and movies.dat inside `dir`.
  static MovieLensPaths in_directory(const std::filesystem::path& dir);
};

// Loads the MovieLens 1M "::"-separated files.
//
// The user and item sets are those appearing in the ratings file. Users
// missing from users.dat get the unknown group; rated items missing from
// movies.dat are a ParseError. Ratings outside `bounds` throw
// RatingRangeError and repeated (user, item) pairs DuplicateRatingError,
// both with file and line in the message.
Dataset load_movielens(const MovieLensPaths& paths, RatingBounds bounds = {});

// |ratings| / (m * n). Throws when either dimension is zero.
double density(const RatingStore& store);

struct SplitResult {
  RatingStore train;
  RatingStore test;
};

// Per-user stratified split. Each profile is shuffled with its own
// substream of `seed` and the first ceil(ratio * size) ratings go to train,
// so every non-empty profile keeps at least one training rating.
SplitResult split_train_test(const RatingStore& store, double ratio,
                             std::uint64_t seed, std::uint64_t iteration);

// Snapshot format: optional "# " header lines, then one rating per line as
// user<TAB>item<TAB>rating<TAB>origin with external ids and origin either
// "initial" or the injecting iteration.
void write_snapshot(std::ostream& out, const RatingStore& store);

// Rebuilds a store on the id spaces and bounds of `like` from a snapshot.
// Header lines are returned through `header` when non-null, without the
// leading "# ".
RatingStore read_snapshot(std::istream& in, const RatingStore& like,
                          const std::string& source_name,
                          std::vector<std::string>* header = nullptr);

}  // namespace loopsim

#endif  // LOOPSIM_DATASET_HPP_
