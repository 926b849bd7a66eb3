// Copyright 2026 The qhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arm_neon.h>

#include "qhash/simd/kernels.hpp"

namespace qhash::simd::neon {

// One float64x2_t holds a single complex value [re, im].
Complex cdot(const Complex* a, const Complex* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i);
    const float64x2_t vb = vld1q_f64(pb + 2 * i);
    re = vfmaq_f64(re, va, vb);                 // [ar*br, ai*bi]
    im = vfmaq_f64(im, va, vextq_f64(vb, vb, 1));  // [ar*bi, ai*br]
  }
  return {vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1),
          vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1)};
}

double norm_sq(const Complex* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(pa + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

}  // namespace qhash::simd::neon
