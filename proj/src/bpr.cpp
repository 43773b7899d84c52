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

#include "loopsim/bpr.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "loopsim/kernels.hpp"
#include "loopsim/rng.hpp"

namespace loopsim {
namespace {

double plain_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double squared_norm(std::span<const double> a) { return plain_dot(a, a); }

// ln sigma(x) without overflow.
double log_logistic(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double bpr_triple_objective(std::span<const double> w_u,
                            std::span<const double> h_i,
                            std::span<const double> h_j, double reg) {
  const double x = plain_dot(w_u, h_i) - plain_dot(w_u, h_j);
  return log_logistic(x) -
         reg * (squared_norm(w_u) + squared_norm(h_i) + squared_norm(h_j));
}

BprGradient bpr_triple_gradient(std::span<const double> w_u,
                                std::span<const double> h_i,
                                std::span<const double> h_j, double reg) {
  const double x = plain_dot(w_u, h_i) - plain_dot(w_u, h_j);
  const double weight = logistic(-x);
  const std::size_t f = w_u.size();
  BprGradient g{std::vector<double>(f), std::vector<double>(f),
                std::vector<double>(f)};
  for (std::size_t k = 0; k < f; ++k) {
    g.w_u[k] = weight * (h_i[k] - h_j[k]) - 2.0 * reg * w_u[k];
    g.h_i[k] = weight * w_u[k] - 2.0 * reg * h_i[k];
    g.h_j[k] = -weight * w_u[k] - 2.0 * reg * h_j[k];
  }
  return g;
}

Bpr::Bpr(Options options) : options_(options) {
  if (options_.factors <= 0) {
    throw ConfigError("bpr_factors", "must be positive");
  }
  if (!(options_.learning_rate > 0.0)) {
    throw ConfigError("bpr_learning_rate", "must be positive");
  }
  if (!(options_.regularization >= 0.0)) {
    throw ConfigError("bpr_regularization", "must be non-negative");
  }
  if (options_.epochs < 0) throw ConfigError("bpr_epochs", "must be >= 0");
  if (!(options_.init_stddev > 0.0)) {
    throw ConfigError("bpr_init_stddev", "must be positive");
  }
}

void Bpr::fit(const RatingStore& train, std::uint64_t seed,
              std::uint64_t iteration) {
  if (train.num_ratings() == 0) throw Error("cannot fit on an empty store");
  const std::size_t f = options_.factors;
  num_users_ = train.num_users();
  num_items_ = train.num_items();

  Rng init = make_rng(seed, Stream::kBprInit, iteration);
  std::normal_distribution<double> normal(0.0, options_.init_stddev);
  user_factors_.resize(num_users_ * f);
  item_factors_.resize(num_items_ * f);
  for (double& v : user_factors_) v = normal(init);
  for (double& v : item_factors_) v = normal(init);

  std::vector<std::pair<UserIndex, ItemIndex>> positives;
  positives.reserve(train.num_ratings());
  for (UserIndex u = 0; u < num_users_; ++u) {
    for (const RatingEntry& e : train.profile(u)) {
      positives.emplace_back(u, e.item);
    }
  }

  const kernels::KernelTable& kt = kernels::active();
  Rng rng = make_rng(seed, Stream::kBprSgd, iteration);
  std::uniform_int_distribution<std::size_t> pick_pair(0, positives.size() - 1);
  std::uniform_int_distribution<ItemIndex> pick_item(
      0, static_cast<ItemIndex>(num_items_ - 1));
  for (int epoch = 0; epoch < options_.epochs; ++epoch) {
    for (std::size_t s = 0; s < positives.size(); ++s) {
      const auto [u, i] = positives[pick_pair(rng)];
      if (train.user_count(u) >= num_items_) continue;
      ItemIndex j = pick_item(rng);
      while (train.contains(u, j)) j = pick_item(rng);

      double* w_u = user_factors_.data() + u * f;
      double* h_i = item_factors_.data() + i * f;
      double* h_j = item_factors_.data() + j * f;
      const double x = kt.dot(w_u, h_i, f) - kt.dot(w_u, h_j, f);
      kt.bpr_step(w_u, h_i, h_j, f, logistic(-x), options_.learning_rate,
                  options_.regularization);
    }
  }
  set_fitted(true);
}

void Bpr::score_items(UserIndex user, std::span<double> out) const {
  const std::size_t f = options_.factors;
  kernels::active().score_rows(item_factors_.data(), num_items_, f,
                               user_factors_.data() + user * f, out.data());
}

double Bpr::score(UserIndex user, ItemIndex item) const {
  if (user >= num_users_) throw UnknownEntityError("unknown user");
  if (item >= num_items_) throw UnknownEntityError("unknown item");
  const std::size_t f = options_.factors;
  return kernels::active().dot(user_factors_.data() + user * f,
                               item_factors_.data() + item * f, f);
}

std::span<const double> Bpr::user_factors(UserIndex u) const {
  return {user_factors_.data() + u * options_.factors,
          static_cast<std::size_t>(options_.factors)};
}

std::span<const double> Bpr::item_factors(ItemIndex i) const {
  return {item_factors_.data() + i * options_.factors,
          static_cast<std::size_t>(options_.factors)};
}

void Bpr::set_factors(std::vector<double> users, std::vector<double> items) {
  const std::size_t f = options_.factors;
  if (users.size() % f != 0 || items.size() % f != 0) {
    throw Error("factor matrices must have a multiple of f entries");
  }
  num_users_ = users.size() / f;
  num_items_ = items.size() / f;
  user_factors_ = std::move(users);
  item_factors_ = std::move(items);
  set_fitted(true);
}

}  // namespace loopsim
