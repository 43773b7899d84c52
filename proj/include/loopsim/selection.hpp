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

#ifndef LOOPSIM_SELECTION_HPP_
#define LOOPSIM_SELECTION_HPP_

#include <vector>

#include "loopsim/common.hpp"
#include "loopsim/recommender.hpp"
#include "loopsim/rng.hpp"

namespace loopsim {

struct AcceptanceEntry {
  ItemIndex item;
  std::size_t rank;    // 1-based
  double weight;       // exp(alpha * rank)
  double probability;  // weight / sum of weights
};

struct AcceptanceDistribution {
  std::vector<AcceptanceEntry> entries;
};

// Rank-exponential acceptance: the item at rank r gets weight
// exp(alpha * r), normalized over the list. Throws Error for an empty list
// or alpha >= 0.
AcceptanceDistribution acceptance_probabilities(const RankedList& list,
                                                double alpha);

// Index into dist.entries drawn by inverse CDF in rank order.
std::size_t sample_index(const AcceptanceDistribution& dist, Rng& rng);

// Item drawn from the distribution.
ItemIndex sample_selection(const AcceptanceDistribution& dist, Rng& rng);

// `count` distinct entry indices, each drawn from the distribution
// renormalized over the entries not drawn yet. Returns fewer when the list
// is shorter than `count`.
std::vector<std::size_t> sample_without_replacement(
    const AcceptanceDistribution& dist, std::size_t count, Rng& rng);

struct SynthesizedRating {
  double omega;  // before rounding and clamping
  int rating;
};

// max(min(round(omega), b), a) with round-half-away-from-zero.
int round_and_clamp(double omega, RatingBounds bounds);

// omega = user_mean + user_stddev * item_mean + noise.
SynthesizedRating synthesize_rating_with_noise(double user_mean,
                                               double user_stddev,
                                               double item_mean,
                                               RatingBounds bounds,
                                               double noise);

// Same with noise ~ N(0, 1) drawn from `rng`.
SynthesizedRating synthesize_rating(double user_mean, double user_stddev,
                                    double item_mean, RatingBounds bounds,
                                    Rng& rng);

}  // namespace loopsim

#endif  // LOOPSIM_SELECTION_HPP_
