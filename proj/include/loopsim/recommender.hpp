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

#ifndef LOOPSIM_RECOMMENDER_HPP_
#define LOOPSIM_RECOMMENDER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "loopsim/rating_store.hpp"

namespace loopsim {

enum class Algorithm { kMostPopular, kUserKnn, kBpr };

// "MostPopular", "UserKNN", "BPR".
std::string_view algorithm_name(Algorithm a);
// Accepts the display names and the snake_case forms most_popular,
// user_knn and bpr.
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct Hyperparameters {
  int knn_neighbors = 50;
  int knn_min_overlap = 2;
  int bpr_factors = 50;
  double bpr_learning_rate = 0.05;
  double bpr_regularization = 0.01;
  int bpr_epochs = 30;
  double bpr_init_stddev = 0.1;
  // Worker threads for fitting. Results do not depend on this value.
  int threads = 1;
};

struct RankedEntry {
  ItemIndex item;
  double score;
};

// Top-N list for one user. The rank of entries[k] is k + 1.
struct RankedList {
  UserIndex user = 0;
  std::vector<RankedEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

// The `n` best items by score, excluding every item in `exclude` (sorted by
// item, as returned by RatingStore::profile). Ties go to the smaller item
// index, which is also the smaller external id.
RankedList top_n(UserIndex user, std::span<const double> scores, std::size_t n,
                 std::span<const RatingEntry> exclude);

class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual Algorithm algorithm() const = 0;

  // Trains on `train`. Randomized algorithms draw from substreams of
  // (seed, iteration).
  virtual void fit(const RatingStore& train, std::uint64_t seed,
                   std::uint64_t iteration) = 0;

  bool fitted() const { return fitted_; }

  // Writes a score for every item into `out` (size = number of items).
  // Thread-safe after fit().
  virtual void score_items(UserIndex user, std::span<double> out) const = 0;

  // Throws Error before fit(). Returns an empty list when `exclude` covers
  // the whole catalog.
  RankedList recommend(UserIndex user, std::size_t n,
                       std::span<const RatingEntry> exclude) const;

 protected:
  void set_fitted(bool f) { fitted_ = f; }
  std::size_t num_items_ = 0;

 private:
  bool fitted_ = false;
};

// Throws ConfigError for invalid hyperparameters of the chosen algorithm.
std::unique_ptr<Recommender> make_recommender(Algorithm algorithm,
                                              const Hyperparameters& hp);

}  // namespace loopsim

#endif  // LOOPSIM_RECOMMENDER_HPP_
