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

#ifndef LOOPSIM_SIMULATION_HPP_
#define LOOPSIM_SIMULATION_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loopsim/config.hpp"
#include "loopsim/dataset.hpp"
#include "loopsim/metrics.hpp"
#include "loopsim/recommender.hpp"

namespace loopsim {

struct SelectionEvent {
  int iteration = 0;
  UserIndex user = 0;
  ItemIndex item = 0;
  std::size_t rank = 0;
  double omega = 0.0;
  int rating = 0;
  // False when the drawn item was already in the user's profile. Lists
  // exclude the full profile, so this does not happen in practice.
  bool accepted = false;
};

// Measurements of iteration t: data metrics describe D^t, recommendation
// metrics describe R^t. Unset optionals are reported as not applicable.
struct IterationReport {
  int t = 0;
  Algorithm algorithm = Algorithm::kMostPopular;
  std::size_t dataset_size = 0;  // |D^t|
  std::size_t users_recommended = 0;
  std::size_t users_skipped = 0;  // empty profile or empty list
  std::size_t committed = 0;      // K

  std::optional<double> avg_pop_data;
  std::optional<double> avg_pop_rec;
  std::optional<double> agg_div;
  std::optional<double> theta_abs;
  std::optional<double> theta_rel;
  std::optional<double> drift_all;
  std::optional<double> drift_male;
  std::optional<double> drift_female;
  std::optional<double> kld_male_female;
  std::optional<double> kld_pop_male;
  std::optional<double> kld_pop_female;

  // Popularity bookkeeping with phi frozen at D^t: mean phi of the K
  // committed items, its gap to avg_pop_data, and the resulting prediction
  // of the (frozen-phi) average popularity of D^{t+1}.
  std::optional<double> committed_popularity;
  std::optional<double> theta_committed;
  std::optional<double> predicted_next_popularity;
};

struct IterationResult {
  RatingStore next;  // D^{t+1}
  IterationReport report;
  std::vector<SelectionEvent> events;  // ordered by user
  std::vector<RankedList> lists;       // R^t, indexed by user
};

// One pass of split, fit, recommend, select, synthesize and commit on
// D^t = `current`. All staged ratings are committed together after every
// user has been processed, tagged with origin t.
IterationResult run_iteration(const RatingStore& current,
                              const Catalog& catalog,
                              const InitialPreferences& initial,
                              const SimulationConfig& config, int t);

// P_D + K * theta / (|D| + K). Requires data_size > 0.
double predict_next_popularity(double data_popularity, std::size_t data_size,
                               std::size_t committed, double theta);

// The ratings of `store` whose origin is the initial data.
RatingStore initial_ratings(const RatingStore& store);

struct Checkpoint {
  int completed_iteration = 0;
  std::string config_hash;
  std::uint64_t seed = 0;
  RatingStore store;  // D^{completed_iteration + 1}
};

// Writes atomically (temporary file, then rename).
void write_checkpoint(const std::filesystem::path& path,
                      const RatingStore& next, int completed_iteration,
                      const SimulationConfig& config);
Checkpoint read_checkpoint(const std::filesystem::path& path,
                           const RatingStore& like);
std::filesystem::path checkpoint_path(const std::filesystem::path& dir,
                                      int completed_iteration);

struct RunOptions {
  int first_iteration = 1;
  // Last iteration to run; 0 means config.iterations.
  int last_iteration = 0;
  // When set, a checkpoint is written every `checkpoint_every` iterations
  // and after the last one.
  std::optional<std::filesystem::path> checkpoint_dir;
  int checkpoint_every = 1;
  std::function<void(const IterationResult&)> on_iteration;
};

struct SimulationResult {
  std::vector<IterationReport> trajectory;
  std::vector<SelectionEvent> events;
  RatingStore final_store;
};

// Runs iterations first..last starting from `start.ratings` as D^first.
// Initial preferences come from the initial-origin ratings, so a store
// restored from a checkpoint continues exactly like an uninterrupted run.
SimulationResult run_simulation(const Dataset& start,
                                const SimulationConfig& config,
                                const RunOptions& options = {});

}  // namespace loopsim

#endif  // LOOPSIM_SIMULATION_HPP_
