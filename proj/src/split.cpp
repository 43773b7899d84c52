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

#include <algorithm>
#include <cmath>

#include "loopsim/dataset.hpp"

namespace loopsim {

SplitResult split_train_test(const RatingStore& store, double ratio,
                             std::uint64_t seed, std::uint64_t iteration) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error("split ratio must lie in (0, 1)");
  }
  if (store.num_ratings() == 0) throw Error("cannot split an empty store");

  SplitResult out{RatingStore::empty_like(store),
                  RatingStore::empty_like(store)};
  std::vector<RatingEntry> entries;
  for (UserIndex u = 0; u < store.num_users(); ++u) {
    auto p = store.profile(u);
    if (p.empty()) continue;
    entries.assign(p.begin(), p.end());
    Rng rng = make_rng(seed, Stream::kSplit, iteration, u);
    std::shuffle(entries.begin(), entries.end(), rng);
    // ceil(ratio * size), with 10 * 0.8 giving 8.
    const auto n_train = static_cast<std::size_t>(
        std::ceil(ratio * static_cast<double>(entries.size()) - 1e-9));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      RatingStore& dst = k < n_train ? out.train : out.test;
      dst.insert(u, entries[k].item, entries[k].rating, entries[k].origin);
    }
  }
  return out;
}

}  // namespace loopsim
