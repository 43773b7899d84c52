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

#ifndef LOOPSIM_CONFIG_HPP_
#define LOOPSIM_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "loopsim/dataset.hpp"
#include "loopsim/recommender.hpp"

namespace loopsim {

// Every knob of a simulation run. Defaults: 20 iterations, lists of 10,
// alpha -0.3, ratings in [1, 5], 80/20 split, one selection per user.
struct SimulationConfig {
  MovieLensPaths data;
  Algorithm algorithm = Algorithm::kMostPopular;
  int iterations = 20;
  int list_length = 10;
  double alpha = -0.3;
  RatingBounds bounds{1, 5};
  double split_ratio = 0.8;
  std::uint64_t seed = 42;
  int selections_per_user = 1;
  double kl_epsilon = 1e-9;
  Hyperparameters hyper;  // hyper.threads is the worker count

  // Throws ConfigError naming the first offending field.
  void validate() const;
};

// Parses a flat YAML mapping. Relative data paths resolve against
// `base_dir`. Unknown keys and type mismatches throw ConfigError; the
// result is validated.
//
// Keys: data_dir (sets all three files), ratings_path, users_path,
// movies_path, algorithm, iterations, list_length, alpha, rating_min,
// rating_max, split_ratio, seed, selections_per_user, kl_epsilon, threads,
// knn_neighbors, knn_min_overlap, bpr_factors, bpr_learning_rate,
// bpr_regularization, bpr_epochs, bpr_init_stddev.
SimulationConfig parse_config(std::string_view yaml,
                              const std::filesystem::path& base_dir);
SimulationConfig load_config(const std::filesystem::path& path);

// Sorted key=value lines of every setting except the worker count.
std::string canonical_config(const SimulationConfig& config);

// SHA-256 of canonical_config().
std::string config_hash(const SimulationConfig& config);

}  // namespace loopsim

#endif  // LOOPSIM_CONFIG_HPP_
