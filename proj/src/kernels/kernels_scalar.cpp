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

// Reference kernels. Plain sequential loops; the vector variants are tested
// against these.

#include "chansim/kernels.hpp"

namespace chansim::kernels
{
    namespace
    {
        double dot_scalar(const double *a, const double *b, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void axpy_scalar(double alpha, const double *x, double *y, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                y[i] += alpha * x[i];
        }

        void accumulate_squares_scalar(const double *x, double *acc, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                acc[i] += x[i] * x[i];
        }

        double sum_squares_scalar(const double *x, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += x[i] * x[i];
            return s;
        }

        void scale_scalar(double alpha, double *x, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                x[i] *= alpha;
        }

        constexpr KernelTable kScalar{Isa::Scalar, dot_scalar, axpy_scalar, accumulate_squares_scalar,
                                      sum_squares_scalar, scale_scalar};
    }

    const KernelTable &scalar_table() noexcept { return kScalar; }
}
