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

#include "loopsim/most_popular.hpp"

#include <algorithm>

namespace loopsim {

void MostPopular::fit(const RatingStore& train, std::uint64_t, std::uint64_t) {
  if (train.num_ratings() == 0) throw Error("cannot fit on an empty store");
  num_items_ = train.num_items();
  counts_.assign(num_items_, 0.0);
  for (ItemIndex i = 0; i < num_items_; ++i) {
    counts_[i] = static_cast<double>(train.item_count(i));
  }
  set_fitted(true);
}

void MostPopular::score_items(UserIndex, std::span<double> out) const {
  std::copy(counts_.begin(), counts_.end(), out.begin());
}

}  // namespace loopsim
