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

#include <algorithm>
#include <cmath>

#include "loopsim/kernels.hpp"

namespace loopsim::kernels {

void PearsonMoments::resize(std::size_t n) {
  for (auto* v : {&count, &sum_x, &sum_y, &sum_xx, &sum_yy, &sum_xy}) {
    v->assign(n, 0.0);
  }
}

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void score_rows_scalar(const double* matrix, std::size_t rows, std::size_t cols,
                       const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = dot_scalar(matrix + r * cols, x, cols);
  }
}

void bpr_step_scalar(double* w_u, double* h_i, double* h_j, std::size_t f,
                     double weight, double lr, double reg) {
  const double reg2 = 2.0 * reg;
  for (std::size_t k = 0; k < f; ++k) {
    const double wu = w_u[k];
    const double hi = h_i[k];
    const double hj = h_j[k];
    w_u[k] = wu + lr * (weight * (hi - hj) - reg2 * wu);
    h_i[k] = hi + lr * (weight * wu - reg2 * hi);
    h_j[k] = hj + lr * (-weight * wu - reg2 * hj);
  }
}

void pearson_scalar(const PearsonMoments& m, std::size_t n, double min_overlap,
                    double* out) {
  for (std::size_t v = 0; v < n; ++v) {
    const double c = m.count[v];
    const double num = c * m.sum_xy[v] - m.sum_x[v] * m.sum_y[v];
    const double dx = c * m.sum_xx[v] - m.sum_x[v] * m.sum_x[v];
    const double dy = c * m.sum_yy[v] - m.sum_y[v] * m.sum_y[v];
    if (c < min_overlap || !(dx > 0.0) || !(dy > 0.0)) {
      out[v] = 0.0;
      continue;
    }
    const double r = num / std::sqrt(dx * dy);
    out[v] = std::min(1.0, std::max(-1.0, r));
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, dot_scalar, score_rows_scalar,
                                 bpr_step_scalar, pearson_scalar};
  return table;
}

}  // namespace loopsim::kernels
