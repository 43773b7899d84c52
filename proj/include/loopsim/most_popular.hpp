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

#ifndef LOOPSIM_MOST_POPULAR_HPP_
#define LOOPSIM_MOST_POPULAR_HPP_

#include <vector>

#include "loopsim/recommender.hpp"

namespace loopsim {

// Scores every item by its rating count in the training data.
class MostPopular : public Recommender {
 public:
  Algorithm algorithm() const override { return Algorithm::kMostPopular; }
  void fit(const RatingStore& train, std::uint64_t seed,
           std::uint64_t iteration) override;
  void score_items(UserIndex user, std::span<double> out) const override;

  const std::vector<double>& counts() const { return counts_; }

 private:
  std::vector<double> counts_;
};

}  // namespace loopsim

#endif  // LOOPSIM_MOST_POPULAR_HPP_
