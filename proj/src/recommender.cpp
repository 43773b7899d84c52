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

#include "loopsim/recommender.hpp"

#include <algorithm>
#include <numeric>

#include "loopsim/bpr.hpp"
#include "loopsim/most_popular.hpp"
#include "loopsim/user_knn.hpp"

namespace loopsim {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kMostPopular:
      return "MostPopular";
    case Algorithm::kUserKnn:
      return "UserKNN";
    case Algorithm::kBpr:
      return "BPR";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "MostPopular" || s == "most_popular") return Algorithm::kMostPopular;
  if (s == "UserKNN" || s == "user_knn") return Algorithm::kUserKnn;
  if (s == "BPR" || s == "bpr") return Algorithm::kBpr;
  return std::nullopt;
}

RankedList top_n(UserIndex user, std::span<const double> scores, std::size_t n,
                 std::span<const RatingEntry> exclude) {
  RankedList list;
  list.user = user;
  std::vector<ItemIndex> candidates;
  candidates.reserve(scores.size());
  auto ex = exclude.begin();
  for (ItemIndex i = 0; i < scores.size(); ++i) {
    while (ex != exclude.end() && ex->item < i) ++ex;
    if (ex != exclude.end() && ex->item == i) continue;
    candidates.push_back(i);
  }
  const std::size_t keep = std::min(n, candidates.size());
  auto better = [&](ItemIndex a, ItemIndex b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + keep,
                    candidates.end(), better);
  list.entries.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    list.entries.push_back({candidates[k], scores[candidates[k]]});
  }
  return list;
}

RankedList Recommender::recommend(UserIndex user, std::size_t n,
                                  std::span<const RatingEntry> exclude) const {
  if (!fitted_) throw Error("recommend() called before fit()");
  std::vector<double> scores(num_items_);
  score_items(user, scores);
  return top_n(user, scores, n, exclude);
}

std::unique_ptr<Recommender> make_recommender(Algorithm algorithm,
                                              const Hyperparameters& hp) {
  switch (algorithm) {
    case Algorithm::kMostPopular:
      return std::make_unique<MostPopular>();
    case Algorithm::kUserKnn:
      return std::make_unique<UserKnn>(hp.knn_neighbors, hp.knn_min_overlap,
                                       hp.threads);
    case Algorithm::kBpr:
      return std::make_unique<Bpr>(Bpr::Options{
          hp.bpr_factors, hp.bpr_learning_rate, hp.bpr_regularization,
          hp.bpr_epochs, hp.bpr_init_stddev});
  }
  throw ConfigError("algorithm", "unknown algorithm");
}

}  // namespace loopsim
