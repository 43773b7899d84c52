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

#include "loopsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "loopsim/hash.hpp"

namespace loopsim {
namespace {

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& key,
            const char* expected) {
  if (!node.IsScalar()) {
    throw ConfigError(key, std::string("expected ") + expected);
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, std::string("expected ") + expected + ", got '" +
                               node.Scalar() + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void SimulationConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (list_length < 1) throw ConfigError("list_length", "must be >= 1");
  if (!(alpha < 0.0)) throw ConfigError("alpha", "must be negative");
  if (bounds.min >= bounds.max) {
    throw ConfigError("rating_min", "must be smaller than rating_max");
  }
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw ConfigError("split_ratio", "must lie strictly between 0 and 1");
  }
  if (selections_per_user < 1) {
    throw ConfigError("selections_per_user", "must be >= 1");
  }
  if (!(kl_epsilon > 0.0)) throw ConfigError("kl_epsilon", "must be positive");
  if (hyper.threads < 1) throw ConfigError("threads", "must be >= 1");
  if (hyper.knn_neighbors < 1) {
    throw ConfigError("knn_neighbors", "must be >= 1");
  }
  if (hyper.knn_min_overlap < 1) {
    throw ConfigError("knn_min_overlap", "must be >= 1");
  }
  if (hyper.bpr_factors < 1) throw ConfigError("bpr_factors", "must be >= 1");
  if (!(hyper.bpr_learning_rate > 0.0)) {
    throw ConfigError("bpr_learning_rate", "must be positive");
  }
  if (!(hyper.bpr_regularization >= 0.0)) {
    throw ConfigError("bpr_regularization", "must be non-negative");
  }
  if (hyper.bpr_epochs < 0) throw ConfigError("bpr_epochs", "must be >= 0");
  if (!(hyper.bpr_init_stddev > 0.0)) {
    throw ConfigError("bpr_init_stddev", "must be positive");
  }
}

SimulationConfig parse_config(std::string_view yaml,
                              const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError("config", std::string("not valid YAML: ") + e.what());
  }
  SimulationConfig c;
  if (root.IsNull()) {
    c.validate();
    return c;
  }
  if (!root.IsMap()) throw ConfigError("config", "expected a key-value map");

  auto path_of = [&](const YAML::Node& n, const std::string& key) {
    std::filesystem::path p = scalar_as<std::string>(n, key, "a path");
    return p.is_absolute() ? p : base_dir / p;
  };

  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "data_dir") {
      c.data = MovieLensPaths::in_directory(path_of(v, key));
    } else if (key == "ratings_path") {
      c.data.ratings = path_of(v, key);
    } else if (key == "users_path") {
      c.data.users = path_of(v, key);
    } else if (key == "movies_path") {
      c.data.movies = path_of(v, key);
    } else if (key == "algorithm") {
      auto a = parse_algorithm(scalar_as<std::string>(v, key, "a name"));
      if (!a) {
        throw ConfigError(key, "expected MostPopular, UserKNN or BPR, got '" +
                                   v.Scalar() + "'");
      }
      c.algorithm = *a;
    } else if (key == "iterations") {
      c.iterations = scalar_as<int>(v, key, "an integer");
    } else if (key == "list_length") {
      c.list_length = scalar_as<int>(v, key, "an integer");
    } else if (key == "alpha") {
      c.alpha = scalar_as<double>(v, key, "a number");
    } else if (key == "rating_min") {
      c.bounds.min = scalar_as<int>(v, key, "an integer");
    } else if (key == "rating_max") {
      c.bounds.max = scalar_as<int>(v, key, "an integer");
    } else if (key == "split_ratio") {
      c.split_ratio = scalar_as<double>(v, key, "a number");
    } else if (key == "seed") {
      c.seed = scalar_as<std::uint64_t>(v, key, "a non-negative integer");
    } else if (key == "selections_per_user") {
      c.selections_per_user = scalar_as<int>(v, key, "an integer");
    } else if (key == "kl_epsilon") {
      c.kl_epsilon = scalar_as<double>(v, key, "a number");
    } else if (key == "threads") {
      c.hyper.threads = scalar_as<int>(v, key, "an integer");
    } else if (key == "knn_neighbors") {
      c.hyper.knn_neighbors = scalar_as<int>(v, key, "an integer");
    } else if (key == "knn_min_overlap") {
      c.hyper.knn_min_overlap = scalar_as<int>(v, key, "an integer");
    } else if (key == "bpr_factors") {
      c.hyper.bpr_factors = scalar_as<int>(v, key, "an integer");
    } else if (key == "bpr_learning_rate") {
      c.hyper.bpr_learning_rate = scalar_as<double>(v, key, "a number");
    } else if (key == "bpr_regularization") {
      c.hyper.bpr_regularization = scalar_as<double>(v, key, "a number");
    } else if (key == "bpr_epochs") {
      c.hyper.bpr_epochs = scalar_as<int>(v, key, "an integer");
    } else if (key == "bpr_init_stddev") {
      c.hyper.bpr_init_stddev = scalar_as<double>(v, key, "a number");
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  c.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string canonical_config(const SimulationConfig& c) {
  std::map<std::string, std::string> kv{
      {"algorithm", std::string(algorithm_name(c.algorithm))},
      {"alpha", format_double(c.alpha)},
      {"bpr_epochs", std::to_string(c.hyper.bpr_epochs)},
      {"bpr_factors", std::to_string(c.hyper.bpr_factors)},
      {"bpr_init_stddev", format_double(c.hyper.bpr_init_stddev)},
      {"bpr_learning_rate", format_double(c.hyper.bpr_learning_rate)},
      {"bpr_regularization", format_double(c.hyper.bpr_regularization)},
      {"iterations", std::to_string(c.iterations)},
      {"kl_epsilon", format_double(c.kl_epsilon)},
      {"knn_min_overlap", std::to_string(c.hyper.knn_min_overlap)},
      {"knn_neighbors", std::to_string(c.hyper.knn_neighbors)},
      {"list_length", std::to_string(c.list_length)},
      {"movies_path", c.data.movies.lexically_normal().string()},
      {"rating_max", std::to_string(c.bounds.max)},
      {"rating_min", std::to_string(c.bounds.min)},
      {"ratings_path", c.data.ratings.lexically_normal().string()},
      {"seed", std::to_string(c.seed)},
      {"selections_per_user", std::to_string(c.selections_per_user)},
      {"split_ratio", format_double(c.split_ratio)},
      {"users_path", c.data.users.lexically_normal().string()},
  };
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string config_hash(const SimulationConfig& config) {
  return sha256_hex(canonical_config(config));
}

}  // namespace loopsim
