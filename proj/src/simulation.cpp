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

#include "loopsim/simulation.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <fstream>

#include "loopsim/parallel.hpp"
#include "loopsim/rng.hpp"
#include "loopsim/selection.hpp"

namespace loopsim {
namespace {

struct UserOutcome {
  bool skipped = true;
  std::vector<SelectionEvent> events;
};

}  // namespace

double predict_next_popularity(double data_popularity, std::size_t data_size,
                               std::size_t committed, double theta) {
  if (data_size == 0) throw Error("prediction needs a non-empty data set");
  const double k = static_cast<double>(committed);
  return data_popularity +
         k * theta / (static_cast<double>(data_size) + k);
}

RatingStore initial_ratings(const RatingStore& store) {
  RatingStore out = RatingStore::empty_like(store);
  for (UserIndex u = 0; u < store.num_users(); ++u) {
    for (const RatingEntry& e : store.profile(u)) {
      if (e.origin == kInitialOrigin) out.insert(u, e.item, e.rating);
    }
  }
  return out;
}

IterationResult run_iteration(const RatingStore& current,
                              const Catalog& catalog,
                              const InitialPreferences& initial,
                              const SimulationConfig& config, int t) {
  if (t < 1) throw Error("iterations are numbered from 1");
  if (current.num_ratings() == 0) {
    throw Error("cannot iterate on an empty store");
  }
  const std::size_t m = current.num_users();

  SplitResult split =
      split_train_test(current, config.split_ratio, config.seed, t);
  auto model = make_recommender(config.algorithm, config.hyper);
  model->fit(split.train, config.seed, t);

  IterationResult result;
  result.lists.resize(m);
  std::vector<UserOutcome> outcomes(m);
  const double global_mean = current.global_mean();

  parallel_chunks(m, config.hyper.threads, [&](std::size_t, std::size_t begin,
                                               std::size_t end) {
    for (std::size_t uu = begin; uu < end; ++uu) {
      const auto u = static_cast<UserIndex>(uu);
      auto profile = current.profile(u);
      if (profile.empty()) continue;
      RankedList list = model->recommend(u, config.list_length, profile);
      if (list.empty()) continue;

      UserOutcome& out = outcomes[u];
      out.skipped = false;
      const AcceptanceDistribution dist =
          acceptance_probabilities(list, config.alpha);
      Rng select_rng = make_rng(config.seed, Stream::kSelect, t, u);
      Rng noise_rng = make_rng(config.seed, Stream::kNoise, t, u);
      const auto picks = sample_without_replacement(
          dist, config.selections_per_user, select_rng);
      for (std::size_t k : picks) {
        const AcceptanceEntry& entry = dist.entries[k];
        SelectionEvent ev;
        ev.iteration = t;
        ev.user = u;
        ev.item = entry.item;
        ev.rank = entry.rank;
        ev.accepted = !current.contains(u, entry.item);
        if (ev.accepted) {
          const double item_mean =
              current.item_mean(entry.item).value_or(global_mean);
          const SynthesizedRating s = synthesize_rating(
              current.user_mean(u), current.user_stddev(u), item_mean,
              config.bounds, noise_rng);
          ev.omega = s.omega;
          ev.rating = s.rating;
        } else {
          spdlog::warn("t={} user {}: drawn item {} already rated", t,
                       current.user_id(u), current.item_id(entry.item));
        }
        out.events.push_back(ev);
      }
      result.lists[u] = std::move(list);
    }
  });

  IterationReport& rep = result.report;
  rep.t = t;
  rep.algorithm = config.algorithm;
  rep.dataset_size = current.num_ratings();

  result.next = current;
  const PopularityTable popularity = PopularityTable::from_store(current);
  double committed_phi = 0.0;
  for (UserIndex u = 0; u < m; ++u) {
    const UserOutcome& out = outcomes[u];
    if (out.skipped) {
      ++rep.users_skipped;
      continue;
    }
    ++rep.users_recommended;
    for (const SelectionEvent& ev : out.events) {
      if (ev.accepted) {
        result.next.insert(ev.user, ev.item, ev.rating, t);
        committed_phi += popularity.phi[ev.item];
        ++rep.committed;
      }
      result.events.push_back(ev);
    }
  }

  rep.avg_pop_data = average_data_popularity(current, popularity);
  rep.avg_pop_rec =
      average_recommendation_popularity(result.lists, popularity);
  rep.agg_div = aggregate_diversity(result.lists, current.num_items());
  if (rep.avg_pop_rec && *rep.avg_pop_data > 0.0) {
    const Theta theta = compute_theta(*rep.avg_pop_rec, *rep.avg_pop_data);
    rep.theta_abs = theta.absolute;
    rep.theta_rel = theta.relative;
  }
  const DriftSummary drift =
      per_group_taste_drift(current, initial, catalog, config.kl_epsilon);
  rep.drift_all = drift.all;
  rep.drift_male = drift.male;
  rep.drift_female = drift.female;
  rep.kld_male_female = group_divergence(current, catalog, config.kl_epsilon);
  rep.kld_pop_male = group_population_divergence(
      initial.population, current, catalog, UserGroup::kMale,
      config.kl_epsilon);
  rep.kld_pop_female = group_population_divergence(
      initial.population, current, catalog, UserGroup::kFemale,
      config.kl_epsilon);

  if (rep.committed > 0) {
    rep.committed_popularity =
        committed_phi / static_cast<double>(rep.committed);
    rep.theta_committed = *rep.committed_popularity - *rep.avg_pop_data;
    rep.predicted_next_popularity =
        predict_next_popularity(*rep.avg_pop_data, rep.dataset_size,
                                rep.committed, *rep.theta_committed);
  } else {
    rep.predicted_next_popularity = rep.avg_pop_data;
  }
  return result;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir,
                                      int completed_iteration) {
  char name[64];
  std::snprintf(name, sizeof(name), "checkpoint_t%04d.tsv",
                completed_iteration);
  return dir / name;
}

void write_checkpoint(const std::filesystem::path& path,
                      const RatingStore& next, int completed_iteration,
                      const SimulationConfig& config) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << "# loopsim checkpoint v1\n"
        << "# completed_iteration=" << completed_iteration << "\n"
        << "# config_hash=" << config_hash(config) << "\n"
        << "# rng=counter-based seed=" << config.seed
        << " next_iteration=" << completed_iteration + 1 << "\n";
    write_snapshot(out, next);
    if (!out.flush()) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path,
                           const RatingStore& like) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  std::vector<std::string> header;
  Checkpoint cp;
  cp.store = read_snapshot(in, like, path.string(), &header);
  bool have_t = false;
  for (const std::string& h : header) {
    if (h.rfind("completed_iteration=", 0) == 0) {
      cp.completed_iteration = std::stoi(h.substr(20));
      have_t = true;
    } else if (h.rfind("config_hash=", 0) == 0) {
      cp.config_hash = h.substr(12);
    } else if (h.rfind("rng=", 0) == 0) {
      auto pos = h.find("seed=");
      if (pos != std::string::npos) cp.seed = std::stoull(h.substr(pos + 5));
    }
  }
  if (!have_t || cp.config_hash.empty()) {
    throw Error("checkpoint " + path.string() + " has an incomplete header");
  }
  return cp;
}

SimulationResult run_simulation(const Dataset& start,
                                const SimulationConfig& config,
                                const RunOptions& options) {
  config.validate();
  const int last =
      options.last_iteration > 0 ? options.last_iteration : config.iterations;
  if (options.first_iteration < 1) throw Error("first iteration must be >= 1");
  if (options.checkpoint_every < 1) {
    throw ConfigError("checkpoint_every", "must be >= 1");
  }

  SimulationResult result;
  result.final_store = start.ratings;
  const InitialPreferences initial = InitialPreferences::from_store(
      initial_ratings(start.ratings), start.catalog);

  for (int t = options.first_iteration; t <= last; ++t) {
    IterationResult it = run_iteration(result.final_store, start.catalog,
                                       initial, config, t);
    spdlog::info("t={} |D|={} K={} avg_pop_rec={:.6f} agg_div={:.4f}", t,
                 it.report.dataset_size, it.report.committed,
                 it.report.avg_pop_rec.value_or(-1.0),
                 it.report.agg_div.value_or(-1.0));
    if (options.on_iteration) options.on_iteration(it);
    if (options.checkpoint_dir &&
        (t % options.checkpoint_every == 0 || t == last)) {
      write_checkpoint(checkpoint_path(*options.checkpoint_dir, t), it.next,
                       t, config);
    }
    result.trajectory.push_back(it.report);
    result.events.insert(result.events.end(), it.events.begin(),
                         it.events.end());
    result.final_store = std::move(it.next);
  }
  return result;
}

}  // namespace loopsim
