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

#ifndef LOOPSIM_SYNTHETIC_HPP_
#define LOOPSIM_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>

#include "loopsim/dataset.hpp"

namespace loopsim {

// Shape of a generated MovieLens-style corpus: a long-tailed item
// popularity curve, multi-genre items, and two user groups whose genre
// tastes differ, with the female group smaller and rating fewer items.
struct SyntheticSpec {
  std::size_t num_users = 600;
  std::size_t num_items = 500;
  std::size_t num_genres = 18;  // at most 18
  double female_fraction = 0.28;
  double mean_profile_male = 60.0;
  double mean_profile_female = 45.0;
  std::size_t min_profile = 20;
  double popularity_exponent = 0.9;
  std::uint64_t seed = 7;
};

Dataset generate_synthetic(const SyntheticSpec& spec);

// Writes ratings.dat, users.dat and movies.dat in the MovieLens 1M format.
void write_movielens(const Dataset& data, const std::filesystem::path& dir);

}  // namespace loopsim

#endif  // LOOPSIM_SYNTHETIC_HPP_
