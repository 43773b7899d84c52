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

#ifndef LOOPSIM_USER_KNN_HPP_
#define LOOPSIM_USER_KNN_HPP_

#include <vector>

#include "loopsim/kernels.hpp"
#include "loopsim/recommender.hpp"

namespace loopsim {

struct Neighbor {
  UserIndex user;
  double similarity;
};

// User-based collaborative filtering.
//
// Similarity is the Pearson correlation of two users' ratings over the
// items both rated (means taken over those co-rated items), and 0 when
// they share fewer than min_overlap items or either side has no variance.
// Each user keeps the k most similar other users with nonzero similarity,
// ordered by similarity descending and then by user index.
//
// Prediction is mean-offset:
//   s_u + sum_v sim(u,v) (r_vi - s_v) / sum_v |sim(u,v)|
// over the neighbors v of u that rated i, where s_u and s_v are training
// means. With no such neighbor the prediction is s_u.
class UserKnn : public Recommender {
 public:
  UserKnn(int k, int min_overlap = 2, int threads = 1);

  Algorithm algorithm() const override { return Algorithm::kUserKnn; }
  void fit(const RatingStore& train, std::uint64_t seed,
           std::uint64_t iteration) override;
  void score_items(UserIndex user, std::span<double> out) const override;

  // Throws UnknownEntityError for indices outside the training store.
  double predict(UserIndex user, ItemIndex item) const;

  const std::vector<Neighbor>& neighbors(UserIndex user) const {
    return neighbors_[user];
  }
  double mean(UserIndex user) const { return means_[user]; }

  // Similarity of `user` against every user (0 for itself), using the
  // given kernel table. Requires fit().
  std::vector<double> similarity_row(
      UserIndex user,
      const kernels::KernelTable& k = kernels::active()) const;

 private:
  void accumulate_moments(UserIndex user,
                          kernels::PearsonMoments& m,
                          std::vector<UserIndex>& touched) const;

  int k_;
  int min_overlap_;
  int threads_;
  RatingStore train_;
  // item -> (user, rating) for every training rating
  std::vector<std::vector<std::pair<UserIndex, int>>> raters_;
  std::vector<double> means_;
  std::vector<std::vector<Neighbor>> neighbors_;
};

}  // namespace loopsim

#endif  // LOOPSIM_USER_KNN_HPP_
