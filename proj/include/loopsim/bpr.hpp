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

#ifndef LOOPSIM_BPR_HPP_
#define LOOPSIM_BPR_HPP_

#include <span>
#include <vector>

#include "loopsim/recommender.hpp"

namespace loopsim {

// Objective of one (u, i, j) triple, ln sigma(x_uij) - reg * (|w_u|^2 +
// |h_i|^2 + |h_j|^2) with x_uij = <w_u, h_i> - <w_u, h_j>.
double bpr_triple_objective(std::span<const double> w_u,
                            std::span<const double> h_i,
                            std::span<const double> h_j, double reg);

struct BprGradient {
  std::vector<double> w_u;
  std::vector<double> h_i;
  std::vector<double> h_j;
};

// Analytic gradient of bpr_triple_objective.
BprGradient bpr_triple_gradient(std::span<const double> w_u,
                                std::span<const double> h_i,
                                std::span<const double> h_j, double reg);

// Logistic function, stable for large |x|.
double logistic(double x);

// Bayesian personalized ranking with a dot-product factor model.
//
// Training data is binarized: every rated item is a positive. Each epoch
// draws |train| triples by picking a training rating (u, i) uniformly and
// an item j the user has not rated uniformly, then takes one gradient
// ascent step on the triple objective.
class Bpr : public Recommender {
 public:
  struct Options {
    int factors = 50;
    double learning_rate = 0.05;
    double regularization = 0.01;
    int epochs = 30;
    double init_stddev = 0.1;
  };

  explicit Bpr(Options options);

  Algorithm algorithm() const override { return Algorithm::kBpr; }
  void fit(const RatingStore& train, std::uint64_t seed,
           std::uint64_t iteration) override;
  void score_items(UserIndex user, std::span<double> out) const override;

  double score(UserIndex user, ItemIndex item) const;

  int factors() const { return options_.factors; }
  std::span<const double> user_factors(UserIndex u) const;
  std::span<const double> item_factors(ItemIndex i) const;

  // Installs factors directly (row-major, users x f and items x f) and
  // marks the model fitted.
  void set_factors(std::vector<double> users, std::vector<double> items);

 private:
  Options options_;
  std::size_t num_users_ = 0;
  std::vector<double> user_factors_;
  std::vector<double> item_factors_;
};

}  // namespace loopsim

#endif  // LOOPSIM_BPR_HPP_
