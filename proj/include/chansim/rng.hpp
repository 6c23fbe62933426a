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

#ifndef CHANSIM_RNG_HPP
#define CHANSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace chansim
{
    // SplitMix64 finalizer, used to derive well-separated stream seeds.
    constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Seed of the independent stream for realization `index` of a run seeded with `seed`.
    // Depends only on (seed, index), so batch results do not depend on scheduling.
    constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept
    {
        return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    }

    // mt19937_64 engine plus the distribution transforms the generator needs.
    // The transforms are written out (instead of std:: distributions) so a
    // given seed yields the same numbers with every standard library.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        static Rng for_stream(std::uint64_t seed, std::uint64_t index) { return Rng(stream_seed(seed, index)); }

        // Uniform on [0, 1) with 53 random bits.
        double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        // Uniform on (0, 1].
        double uniform_open_low() noexcept { return 1.0 - uniform(); }

        double exponential(double rate) noexcept { return -std::log(uniform_open_low()) / rate; }

        double phase() noexcept { return 2.0 * std::numbers::pi * uniform(); }

        // Rayleigh amplitude whose square has the given mean.
        double rayleigh(double mean_square) noexcept { return std::sqrt(-mean_square * std::log(uniform_open_low())); }

        // Standard normal via Box-Muller; the second variate is cached.
        double normal() noexcept
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
            const double a = 2.0 * std::numbers::pi * uniform();
            spare_ = r * std::sin(a);
            has_spare_ = true;
            return r * std::cos(a);
        }

    private:
        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };
}

#endif
