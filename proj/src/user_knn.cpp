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

#include "loopsim/user_knn.hpp"

#include <algorithm>
#include <cmath>

#include "loopsim/parallel.hpp"

namespace loopsim {

UserKnn::UserKnn(int k, int min_overlap, int threads)
    : k_(k), min_overlap_(min_overlap), threads_(std::max(1, threads)) {
  if (k_ <= 0) throw ConfigError("knn_neighbors", "must be positive");
  if (min_overlap_ < 1) throw ConfigError("knn_min_overlap", "must be >= 1");
}

void UserKnn::accumulate_moments(UserIndex user, kernels::PearsonMoments& m,
                                 std::vector<UserIndex>& touched) const {
  for (const RatingEntry& e : train_.profile(user)) {
    const double x = e.rating;
    for (const auto& [v, r] : raters_[e.item]) {
      if (v == user) continue;
      const double y = r;
      if (m.count[v] == 0.0) touched.push_back(v);
      m.count[v] += 1.0;
      m.sum_x[v] += x;
      m.sum_y[v] += y;
      m.sum_xx[v] += x * x;
      m.sum_yy[v] += y * y;
      m.sum_xy[v] += x * y;
    }
  }
}

void UserKnn::fit(const RatingStore& train, std::uint64_t, std::uint64_t) {
  if (train.num_ratings() == 0) throw Error("cannot fit on an empty store");
  train_ = train;
  num_items_ = train_.num_items();
  const std::size_t num_users = train_.num_users();

  const double global = train_.global_mean();
  means_.assign(num_users, global);
  raters_.assign(num_items_, {});
  for (UserIndex u = 0; u < num_users; ++u) {
    if (train_.user_count(u) > 0) means_[u] = train_.user_mean(u);
    for (const RatingEntry& e : train_.profile(u)) {
      raters_[e.item].emplace_back(u, e.rating);
    }
  }

  neighbors_.assign(num_users, {});
  const kernels::KernelTable& kt = kernels::active();
  parallel_chunks(num_users, threads_, [&](std::size_t, std::size_t begin,
                                           std::size_t end) {
    kernels::PearsonMoments m(num_users);
    std::vector<double> sim(num_users);
    std::vector<UserIndex> touched;
    for (std::size_t u = begin; u < end; ++u) {
      touched.clear();
      accumulate_moments(static_cast<UserIndex>(u), m, touched);
      kt.pearson_from_moments(m, num_users, min_overlap_, sim.data());

      std::vector<Neighbor> row;
      for (UserIndex v : touched) {
        if (sim[v] != 0.0) row.push_back({v, sim[v]});
      }
      auto better = [](const Neighbor& a, const Neighbor& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.user < b.user;
      };
      const std::size_t keep =
          std::min(row.size(), static_cast<std::size_t>(k_));
      std::partial_sort(row.begin(), row.begin() + keep, row.end(), better);
      row.resize(keep);
      neighbors_[u] = std::move(row);

      for (UserIndex v : touched) {
        m.count[v] = m.sum_x[v] = m.sum_y[v] = 0.0;
        m.sum_xx[v] = m.sum_yy[v] = m.sum_xy[v] = 0.0;
      }
    }
  });
  set_fitted(true);
}

std::vector<double> UserKnn::similarity_row(
    UserIndex user, const kernels::KernelTable& k) const {
  if (!fitted()) throw Error("similarity_row() called before fit()");
  if (user >= train_.num_users()) throw UnknownEntityError("unknown user");
  const std::size_t num_users = train_.num_users();
  kernels::PearsonMoments m(num_users);
  std::vector<UserIndex> touched;
  accumulate_moments(user, m, touched);
  std::vector<double> sim(num_users);
  k.pearson_from_moments(m, num_users, min_overlap_, sim.data());
  return sim;
}

double UserKnn::predict(UserIndex user, ItemIndex item) const {
  if (!fitted()) throw Error("predict() called before fit()");
  if (user >= train_.num_users()) throw UnknownEntityError("unknown user");
  if (item >= num_items_) throw UnknownEntityError("unknown item");
  double num = 0.0;
  double den = 0.0;
  for (const Neighbor& nb : neighbors_[user]) {
    auto r = train_.rating(nb.user, item);
    if (!r) continue;
    num += nb.similarity * (*r - means_[nb.user]);
    den += std::abs(nb.similarity);
  }
  return den > 0.0 ? means_[user] + num / den : means_[user];
}

void UserKnn::score_items(UserIndex user, std::span<double> out) const {
  std::vector<double> num(num_items_, 0.0);
  std::vector<double> den(num_items_, 0.0);
  for (const Neighbor& nb : neighbors_[user]) {
    const double mean_v = means_[nb.user];
    const double w = std::abs(nb.similarity);
    for (const RatingEntry& e : train_.profile(nb.user)) {
      num[e.item] += nb.similarity * (e.rating - mean_v);
      den[e.item] += w;
    }
  }
  const double base = means_[user];
  for (ItemIndex i = 0; i < num_items_; ++i) {
    out[i] = den[i] > 0.0 ? base + num[i] / den[i] : base;
  }
}

}  // namespace loopsim
