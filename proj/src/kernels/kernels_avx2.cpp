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

// AVX2 + FMA kernels, 4 doubles per lane. This file is built with -mavx2 -mfma
// and must only be entered after the runtime CPU check in dispatch.cpp.

#include "chansim/kernels.hpp"

#include <immintrin.h>

namespace chansim::kernels
{
    namespace
    {
        inline double hsum(__m256d v)
        {
            const __m128d lo = _mm256_castpd256_pd128(v);
            const __m128d hi = _mm256_extractf128_pd(v, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }

        double dot_avx2(const double *a, const double *b, std::size_t n)
        {
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 8 <= n; i += 8)
            {
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
                acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
            }
            for (; i + 4 <= n; i += 4)
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
            double s = hsum(_mm256_add_pd(acc0, acc1));
            for (; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void axpy_avx2(double alpha, const double *x, double *y, std::size_t n)
        {
            const __m256d va = _mm256_set1_pd(alpha);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
                _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
            for (; i < n; ++i)
                y[i] += alpha * x[i];
        }

        void accumulate_squares_avx2(const double *x, double *acc, std::size_t n)
        {
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d v = _mm256_loadu_pd(x + i);
                _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(v, v, _mm256_loadu_pd(acc + i)));
            }
            for (; i < n; ++i)
                acc[i] += x[i] * x[i];
        }

        double sum_squares_avx2(const double *x, std::size_t n)
        {
            return dot_avx2(x, x, n);
        }

        void scale_avx2(double alpha, double *x, std::size_t n)
        {
            const __m256d va = _mm256_set1_pd(alpha);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
                _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
            for (; i < n; ++i)
                x[i] *= alpha;
        }

        constexpr KernelTable kAvx2{Isa::Avx2, dot_avx2, axpy_avx2, accumulate_squares_avx2, sum_squares_avx2, scale_avx2};
    }

    const KernelTable *avx2_table() noexcept { return &kAvx2; }
}
