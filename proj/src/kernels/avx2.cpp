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

// Built with -mavx2 only (no -mfma): element-wise kernels then perform the
// same IEEE operations as the scalar reference and match it bit for bit.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "loopsim/kernels.hpp"

namespace loopsim::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + k + 4),
                                             _mm256_loadu_pd(b + k + 4)));
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void score_rows_avx2(const double* matrix, std::size_t rows, std::size_t cols,
                     const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = dot_avx2(matrix + r * cols, x, cols);
  }
}

void bpr_step_avx2(double* w_u, double* h_i, double* h_j, std::size_t f,
                   double weight, double lr, double reg) {
  const double reg2_s = 2.0 * reg;
  const __m256d vw = _mm256_set1_pd(weight);
  const __m256d vnw = _mm256_set1_pd(-weight);
  const __m256d vlr = _mm256_set1_pd(lr);
  const __m256d vreg2 = _mm256_set1_pd(reg2_s);
  std::size_t k = 0;
  for (; k + 4 <= f; k += 4) {
    const __m256d wu = _mm256_loadu_pd(w_u + k);
    const __m256d hi = _mm256_loadu_pd(h_i + k);
    const __m256d hj = _mm256_loadu_pd(h_j + k);
    const __m256d gu = _mm256_sub_pd(_mm256_mul_pd(vw, _mm256_sub_pd(hi, hj)),
                                     _mm256_mul_pd(vreg2, wu));
    const __m256d gi = _mm256_sub_pd(_mm256_mul_pd(vw, wu),
                                     _mm256_mul_pd(vreg2, hi));
    const __m256d gj = _mm256_sub_pd(_mm256_mul_pd(vnw, wu),
                                     _mm256_mul_pd(vreg2, hj));
    _mm256_storeu_pd(w_u + k, _mm256_add_pd(wu, _mm256_mul_pd(vlr, gu)));
    _mm256_storeu_pd(h_i + k, _mm256_add_pd(hi, _mm256_mul_pd(vlr, gi)));
    _mm256_storeu_pd(h_j + k, _mm256_add_pd(hj, _mm256_mul_pd(vlr, gj)));
  }
  for (; k < f; ++k) {
    const double wu = w_u[k];
    const double hi = h_i[k];
    const double hj = h_j[k];
    w_u[k] = wu + lr * (weight * (hi - hj) - reg2_s * wu);
    h_i[k] = hi + lr * (weight * wu - reg2_s * hi);
    h_j[k] = hj + lr * (-weight * wu - reg2_s * hj);
  }
}

void pearson_avx2(const PearsonMoments& m, std::size_t n, double min_overlap,
                  double* out) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d neg_one = _mm256_set1_pd(-1.0);
  const __m256d floor = _mm256_set1_pd(min_overlap);
  std::size_t v = 0;
  for (; v + 4 <= n; v += 4) {
    const __m256d c = _mm256_loadu_pd(m.count.data() + v);
    const __m256d sx = _mm256_loadu_pd(m.sum_x.data() + v);
    const __m256d sy = _mm256_loadu_pd(m.sum_y.data() + v);
    const __m256d sxx = _mm256_loadu_pd(m.sum_xx.data() + v);
    const __m256d syy = _mm256_loadu_pd(m.sum_yy.data() + v);
    const __m256d sxy = _mm256_loadu_pd(m.sum_xy.data() + v);
    const __m256d num =
        _mm256_sub_pd(_mm256_mul_pd(c, sxy), _mm256_mul_pd(sx, sy));
    const __m256d dx =
        _mm256_sub_pd(_mm256_mul_pd(c, sxx), _mm256_mul_pd(sx, sx));
    const __m256d dy =
        _mm256_sub_pd(_mm256_mul_pd(c, syy), _mm256_mul_pd(sy, sy));
    const __m256d valid = _mm256_and_pd(
        _mm256_cmp_pd(c, floor, _CMP_GE_OQ),
        _mm256_and_pd(_mm256_cmp_pd(dx, zero, _CMP_GT_OQ),
                      _mm256_cmp_pd(dy, zero, _CMP_GT_OQ)));
    __m256d r = _mm256_div_pd(num, _mm256_sqrt_pd(_mm256_mul_pd(dx, dy)));
    r = _mm256_min_pd(one, _mm256_max_pd(neg_one, r));
    _mm256_storeu_pd(out + v, _mm256_blendv_pd(zero, r, valid));
  }
  for (; v < n; ++v) {
    const double c = m.count[v];
    const double num = c * m.sum_xy[v] - m.sum_x[v] * m.sum_y[v];
    const double dx = c * m.sum_xx[v] - m.sum_x[v] * m.sum_x[v];
    const double dy = c * m.sum_yy[v] - m.sum_y[v] * m.sum_y[v];
    if (c < min_overlap || !(dx > 0.0) || !(dy > 0.0)) {
      out[v] = 0.0;
      continue;
    }
    out[v] = std::min(1.0, std::max(-1.0, num / std::sqrt(dx * dy)));
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2, dot_avx2, score_rows_avx2,
                                 bpr_step_avx2, pearson_avx2};
  return table;
}

}  // namespace loopsim::kernels
