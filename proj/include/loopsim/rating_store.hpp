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

#ifndef LOOPSIM_RATING_STORE_HPP_
#define LOOPSIM_RATING_STORE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loopsim/common.hpp"

namespace loopsim {

struct RatingEntry {
  ItemIndex item;
  std::int16_t rating;
  std::int16_t origin;  // kInitialOrigin or the injecting iteration
};

// Sparse user x item matrix of integer ratings with running per-user and
// per-item statistics.
//
// The user and item sets are fixed at construction; ratings can only be
// added. Statistics are kept as exact integer sums.
class RatingStore {
 public:
  RatingStore() = default;

  // `user_ids` and `item_ids` must be strictly ascending.
  RatingStore(std::vector<UserId> user_ids, std::vector<ItemId> item_ids,
              RatingBounds bounds = {});

  // Same id spaces and bounds as `other`, no ratings.
  static RatingStore empty_like(const RatingStore& other);

  std::size_t num_users() const { return user_ids_.size(); }
  std::size_t num_items() const { return item_ids_.size(); }
  std::size_t num_ratings() const { return num_ratings_; }
  RatingBounds bounds() const { return bounds_; }

  const std::vector<UserId>& user_ids() const { return user_ids_; }
  const std::vector<ItemId>& item_ids() const { return item_ids_; }
  UserId user_id(UserIndex u) const { return user_ids_[u]; }
  ItemId item_id(ItemIndex i) const { return item_ids_[i]; }
  std::optional<UserIndex> find_user(UserId id) const;
  std::optional<ItemIndex> find_item(ItemId id) const;

  // Ratings of user u sorted by item index.
  std::span<const RatingEntry> profile(UserIndex u) const {
    return profiles_[u];
  }
  std::optional<int> rating(UserIndex u, ItemIndex i) const;
  bool contains(UserIndex u, ItemIndex i) const {
    return rating(u, i).has_value();
  }

  // Throws DuplicateRatingError if (u, i) is present and RatingRangeError if
  // `value` is outside the bounds.
  void insert(UserIndex u, ItemIndex i, int value,
              int origin = kInitialOrigin);

  std::size_t user_count(UserIndex u) const { return user_stats_[u].count; }
  // Mean and population standard deviation of the user's ratings. Both
  // require at least one rating; a single rating has deviation 0.
  double user_mean(UserIndex u) const;
  double user_stddev(UserIndex u) const;

  std::size_t item_count(ItemIndex i) const { return item_stats_[i].count; }
  // nullopt when nobody rated the item.
  std::optional<double> item_mean(ItemIndex i) const;

  // Mean over all ratings. Requires a non-empty store.
  double global_mean() const;

  friend bool operator==(const RatingStore& a, const RatingStore& b);

 private:
  struct Moments {
    std::int64_t count = 0;
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;

    void add(int r) {
      ++count;
      sum += r;
      sum_sq += static_cast<std::int64_t>(r) * r;
    }
    friend bool operator==(const Moments&, const Moments&) = default;
  };

  std::vector<UserId> user_ids_;
  std::vector<ItemId> item_ids_;
  RatingBounds bounds_;
  std::vector<std::vector<RatingEntry>> profiles_;
  std::vector<Moments> user_stats_;
  std::vector<Moments> item_stats_;
  Moments total_;
  std::size_t num_ratings_ = 0;
};

}  // namespace loopsim

#endif  // LOOPSIM_RATING_STORE_HPP_
