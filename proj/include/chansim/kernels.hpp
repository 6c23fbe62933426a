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

#ifndef CHANSIM_KERNELS_HPP
#define CHANSIM_KERNELS_HPP

// Dense double-precision inner loops used by waveform rendering, CLEAN
// correlation and PDP accumulation. Every kernel has a scalar reference
// implementation; vector variants (AVX2+FMA on x86-64, NEON on AArch64) are
// compiled when the toolchain targets them and picked at runtime from the
// CPU feature bits. CHANSIM_SIMD=scalar|avx2|neon overrides the choice.

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace chansim::kernels
{
    enum class Isa
    {
        Scalar,
        Avx2,
        Neon
    };

    std::string_view to_string(Isa isa) noexcept;
    std::optional<Isa> parse_isa(std::string_view text) noexcept;

    struct KernelTable
    {
        Isa isa;
        double (*dot)(const double *a, const double *b, std::size_t n);
        void (*axpy)(double alpha, const double *x, double *y, std::size_t n);           // y += alpha x
        void (*accumulate_squares)(const double *x, double *acc, std::size_t n);           // acc += x^2
        double (*sum_squares)(const double *x, std::size_t n);
        void (*scale)(double alpha, double *x, std::size_t n);                              // x *= alpha
    };

    const KernelTable &scalar_table() noexcept;

    // nullptr when the variant was not compiled into this build.
    const KernelTable *avx2_table() noexcept;
    const KernelTable *neon_table() noexcept;

    // Compiled in and supported by the running CPU.
    bool available(Isa isa) noexcept;
    std::vector<Isa> available_isas();

    // Table used by the free functions below. Chosen on first use.
    const KernelTable &active() noexcept;

    // Forces a variant (tests, benchmarking). Returns false and leaves the
    // selection unchanged if the variant is unavailable.
    bool select(Isa isa) noexcept;

    inline double dot(std::span<const double> a, std::span<const double> b) noexcept
    {
        assert(a.size() == b.size());
        return active().dot(a.data(), b.data(), a.size());
    }

    inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept
    {
        assert(x.size() == y.size());
        active().axpy(alpha, x.data(), y.data(), x.size());
    }

    inline void accumulate_squares(std::span<const double> x, std::span<double> acc) noexcept
    {
        assert(x.size() == acc.size());
        active().accumulate_squares(x.data(), acc.data(), x.size());
    }

    inline double sum_squares(std::span<const double> x) noexcept
    {
        return active().sum_squares(x.data(), x.size());
    }

    inline void scale(double alpha, std::span<double> x) noexcept
    {
        active().scale(alpha, x.data(), x.size());
    }
}

#endif
