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

// Data-parallel inner loops used by the recommenders.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant. The active table is chosen once at first use from the CPU
// feature flags; LOOPSIM_KERNELS=scalar forces the reference path.
//
// Element-wise kernels (bpr_step, pearson_from_moments) are bit-identical
// across variants. Reductions (dot, score_rows) accumulate in a different
// order under AVX2 and agree with the reference to rounding error only.

#ifndef LOOPSIM_KERNELS_HPP_
#define LOOPSIM_KERNELS_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

namespace loopsim::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Structure-of-arrays co-rating moments of one user against every other
// user. Entry v holds sums over the items both users rated, with x the
// row user's rating and y user v's rating.
struct PearsonMoments {
  std::vector<double> count;
  std::vector<double> sum_x;
  std::vector<double> sum_y;
  std::vector<double> sum_xx;
  std::vector<double> sum_yy;
  std::vector<double> sum_xy;

  explicit PearsonMoments(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n);
  std::size_t size() const { return count.size(); }
};

struct KernelTable {
  Isa isa;

  // Inner product of two length-n vectors.
  double (*dot)(const double* a, const double* b, std::size_t n);

  // out[r] = <matrix row r, x> for a row-major rows x cols matrix.
  void (*score_rows)(const double* matrix, std::size_t rows, std::size_t cols,
                     const double* x, double* out);

  // One gradient-ascent step on ln sigma(x_uij) - reg * ||theta||^2 where
  // `weight` is 1 - sigma(x_uij):
  //   w_u += lr * (weight * (h_i - h_j) - 2 reg w_u)
  //   h_i += lr * (weight * w_u - 2 reg h_i)
  //   h_j += lr * (-weight * w_u - 2 reg h_j)
  // All three updates read the pre-step values.
  void (*bpr_step)(double* w_u, double* h_i, double* h_j, std::size_t f,
                   double weight, double lr, double reg);

  // Pearson correlation from moments for entries [0, n). Entries with fewer
  // than `min_overlap` co-ratings, or zero variance on either side, get 0.
  // Results are clamped to [-1, 1].
  void (*pearson_from_moments)(const PearsonMoments& m, std::size_t n,
                               double min_overlap, double* out);
};

const KernelTable& scalar_kernels();

// Returns nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

// Table picked at first call: AVX2 when available, unless the environment
// variable LOOPSIM_KERNELS is "scalar".
const KernelTable& active();

}  // namespace loopsim::kernels

#endif  // LOOPSIM_KERNELS_HPP_
