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

#ifndef LOOPSIM_RNG_HPP_
#define LOOPSIM_RNG_HPP_

#include <cstdint>
#include <random>

namespace loopsim {

using Rng = std::mt19937_64;

// Purpose tags for independent substreams of the master seed.
enum class Stream : std::uint64_t {
  kSplit = 1,
  kSelect = 2,
  kNoise = 3,
  kBprInit = 4,
  kBprSgd = 5,
  kSynthetic = 6,
};

// Counter-based seed derivation: the substream for (stream, iteration,
// index) depends only on those values and the master seed.
std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                          std::uint64_t iteration, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t master, Stream stream,
                    std::uint64_t iteration, std::uint64_t index = 0) {
  return Rng(derive_seed(master, stream, iteration, index));
}

}  // namespace loopsim

#endif  // LOOPSIM_RNG_HPP_
