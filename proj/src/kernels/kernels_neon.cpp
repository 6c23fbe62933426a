// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic UWB air-to-ground channel simulator
// Copyright (C) 2026 The chansim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// AArch64 NEON kernels, 2 doubles per register. NEON is mandatory on AArch64,
// so no runtime check is needed once this file is compiled in.

#include "chansim/kernels.hpp"

#include <arm_neon.h>

namespace chansim::kernels
{
    namespace
    {
        double dot_neon(const double *a, const double *b, std::size_t n)
        {
            float64x2_t acc0 = vdupq_n_f64(0.0);
            float64x2_t acc1 = vdupq_n_f64(0.0);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
                acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
            }
            double s = vaddvq_f64(vaddq_f64(acc0, acc1));
            for (; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void axpy_neon(double alpha, const double *x, double *y, std::size_t n)
        {
            const float64x2_t va = vdupq_n_f64(alpha);
            std::size_t i = 0;
            for (; i + 2 <= n; i += 2)
                vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
            for (; i < n; ++i)
                y[i] += alpha * x[i];
        }

        void accumulate_squares_neon(const double *x, double *acc, std::size_t n)
        {
            std::size_t i = 0;
            for (; i + 2 <= n; i += 2)
            {
                const float64x2_t v = vld1q_f64(x + i);
                vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), v, v));
            }
            for (; i < n; ++i)
                acc[i] += x[i] * x[i];
        }

        double sum_squares_neon(const double *x, std::size_t n)
        {
            return dot_neon(x, x, n);
        }

        void scale_neon(double alpha, double *x, std::size_t n)
        {
            std::size_t i = 0;
            for (; i + 2 <= n; i += 2)
                vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), alpha));
            for (; i < n; ++i)
                x[i] *= alpha;
        }

        constexpr KernelTable kNeon{Isa::Neon, dot_neon, axpy_neon, accumulate_squares_neon, sum_squares_neon, scale_neon};
    }

    const KernelTable *neon_table() noexcept { return &kNeon; }
}
