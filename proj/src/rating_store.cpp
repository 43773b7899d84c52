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

#include "loopsim/rating_store.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace loopsim {
namespace {

template <typename Id>
void require_ascending(const std::vector<Id>& ids, const char* what) {
  for (std::size_t k = 1; k < ids.size(); ++k) {
    if (!(ids[k - 1] < ids[k])) {
      throw Error(std::string(what) + " ids must be strictly ascending");
    }
  }
}

template <typename Id>
std::optional<std::uint32_t> find_index(const std::vector<Id>& ids, Id id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids.begin());
}

bool entry_less(const RatingEntry& e, ItemIndex i) { return e.item < i; }

}  // namespace

RatingStore::RatingStore(std::vector<UserId> user_ids,
                         std::vector<ItemId> item_ids, RatingBounds bounds)
    : user_ids_(std::move(user_ids)),
      item_ids_(std::move(item_ids)),
      bounds_(bounds),
      profiles_(user_ids_.size()),
      user_stats_(user_ids_.size()),
      item_stats_(item_ids_.size()) {
  require_ascending(user_ids_, "user");
  require_ascending(item_ids_, "item");
  if (bounds_.min >= bounds_.max) throw Error("rating bounds need min < max");
}

RatingStore RatingStore::empty_like(const RatingStore& other) {
  return RatingStore(other.user_ids_, other.item_ids_, other.bounds_);
}

std::optional<UserIndex> RatingStore::find_user(UserId id) const {
  return find_index(user_ids_, id);
}

std::optional<ItemIndex> RatingStore::find_item(ItemId id) const {
  return find_index(item_ids_, id);
}

std::optional<int> RatingStore::rating(UserIndex u, ItemIndex i) const {
  const auto& p = profiles_[u];
  auto it = std::lower_bound(p.begin(), p.end(), i, entry_less);
  if (it == p.end() || it->item != i) return std::nullopt;
  return it->rating;
}

void RatingStore::insert(UserIndex u, ItemIndex i, int value, int origin) {
  if (u >= num_users() || i >= num_items()) {
    throw UnknownEntityError("rating insert outside the store dimensions");
  }
  if (!bounds_.contains(value)) {
    throw RatingRangeError("rating " + std::to_string(value) +
                           " outside [" + std::to_string(bounds_.min) + ", " +
                           std::to_string(bounds_.max) + "]");
  }
  auto& p = profiles_[u];
  auto it = std::lower_bound(p.begin(), p.end(), i, entry_less);
  if (it != p.end() && it->item == i) {
    throw DuplicateRatingError("duplicate rating for user " +
                               std::to_string(user_ids_[u]) + ", item " +
                               std::to_string(item_ids_[i]));
  }
  p.insert(it, RatingEntry{i, static_cast<std::int16_t>(value),
                           static_cast<std::int16_t>(origin)});
  user_stats_[u].add(value);
  item_stats_[i].add(value);
  total_.add(value);
  ++num_ratings_;
}

double RatingStore::user_mean(UserIndex u) const {
  const Moments& s = user_stats_[u];
  if (s.count == 0) throw Error("mean of an empty user profile");
  return static_cast<double>(s.sum) / static_cast<double>(s.count);
}

double RatingStore::user_stddev(UserIndex u) const {
  const Moments& s = user_stats_[u];
  if (s.count == 0) throw Error("deviation of an empty user profile");
  // c^2 * variance, exact in integers.
  const std::int64_t scaled = s.count * s.sum_sq - s.sum * s.sum;
  return std::sqrt(static_cast<double>(scaled)) /
         static_cast<double>(s.count);
}

std::optional<double> RatingStore::item_mean(ItemIndex i) const {
  const Moments& s = item_stats_[i];
  if (s.count == 0) return std::nullopt;
  return static_cast<double>(s.sum) / static_cast<double>(s.count);
}

double RatingStore::global_mean() const {
  if (total_.count == 0) throw Error("mean of an empty rating store");
  return static_cast<double>(total_.sum) / static_cast<double>(total_.count);
}

bool operator==(const RatingStore& a, const RatingStore& b) {
  if (a.user_ids_ != b.user_ids_ || a.item_ids_ != b.item_ids_ ||
      a.bounds_.min != b.bounds_.min || a.bounds_.max != b.bounds_.max ||
      a.num_ratings_ != b.num_ratings_ || a.user_stats_ != b.user_stats_ ||
      a.item_stats_ != b.item_stats_) {
    return false;
  }
  for (std::size_t u = 0; u < a.profiles_.size(); ++u) {
    const auto& pa = a.profiles_[u];
    const auto& pb = b.profiles_[u];
    if (pa.size() != pb.size()) return false;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      if (pa[k].item != pb[k].item || pa[k].rating != pb[k].rating ||
          pa[k].origin != pb[k].origin) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace loopsim
