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

#include "loopsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace loopsim {

AcceptanceDistribution acceptance_probabilities(const RankedList& list,
                                                double alpha) {
  if (list.empty()) throw Error("acceptance distribution of an empty list");
  if (!(alpha < 0.0)) throw Error("acceptance exponent alpha must be < 0");
  AcceptanceDistribution dist;
  dist.entries.reserve(list.size());
  // Normalized from weights relative to rank 1.
  double total = 0.0;
  std::vector<double> relative(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    relative[k] = std::exp(alpha * static_cast<double>(k));
    total += relative[k];
  }
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::size_t rank = k + 1;
    dist.entries.push_back({list.entries[k].item, rank,
                            std::exp(alpha * static_cast<double>(rank)),
                            relative[k] / total});
  }
  return dist;
}

std::size_t sample_index(const AcceptanceDistribution& dist, Rng& rng) {
  if (dist.entries.empty()) throw Error("sampling an empty distribution");
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double draw = uniform(rng);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < dist.entries.size(); ++k) {
    cumulative += dist.entries[k].probability;
    if (draw < cumulative) return k;
  }
  return dist.entries.size() - 1;
}

ItemIndex sample_selection(const AcceptanceDistribution& dist, Rng& rng) {
  return dist.entries[sample_index(dist, rng)].item;
}

std::vector<std::size_t> sample_without_replacement(
    const AcceptanceDistribution& dist, std::size_t count, Rng& rng) {
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(dist.entries.size(), false);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t want = std::min(count, dist.entries.size());
  while (chosen.size() < want) {
    double remaining = 0.0;
    for (std::size_t k = 0; k < dist.entries.size(); ++k) {
      if (!taken[k]) remaining += dist.entries[k].probability;
    }
    const double draw = uniform(rng) * remaining;
    double cumulative = 0.0;
    std::size_t pick = dist.entries.size();
    std::size_t last_free = 0;
    for (std::size_t k = 0; k < dist.entries.size(); ++k) {
      if (taken[k]) continue;
      last_free = k;
      cumulative += dist.entries[k].probability;
      if (draw < cumulative) {
        pick = k;
        break;
      }
    }
    if (pick == dist.entries.size()) pick = last_free;
    taken[pick] = true;
    chosen.push_back(pick);
  }
  return chosen;
}

int round_and_clamp(double omega, RatingBounds bounds) {
  const double r = std::round(omega);
  if (r >= bounds.max) return bounds.max;
  if (r <= bounds.min) return bounds.min;
  return static_cast<int>(r);
}

SynthesizedRating synthesize_rating_with_noise(double user_mean,
                                               double user_stddev,
                                               double item_mean,
                                               RatingBounds bounds,
                                               double noise) {
  const double omega = user_mean + user_stddev * item_mean + noise;
  return {omega, round_and_clamp(omega, bounds)};
}

SynthesizedRating synthesize_rating(double user_mean, double user_stddev,
                                    double item_mean, RatingBounds bounds,
                                    Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return synthesize_rating_with_noise(user_mean, user_stddev, item_mean,
                                      bounds, normal(rng));
}

}  // namespace loopsim
