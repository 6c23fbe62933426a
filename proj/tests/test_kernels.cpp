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

#include "chansim/analysis.hpp"
#include "chansim/kernels.hpp"
#include "chansim/model.hpp"
#include "chansim/rng.hpp"
#include "chansim/sv_generator.hpp"
#include "chansim/waveform.hpp"
#include "test_support.hpp"

using namespace chansim;
using namespace chansim::kernels;

namespace
{
    std::vector<const KernelTable *> vector_tables()
    {
        std::vector<const KernelTable *> out;
        if (available(Isa::Avx2))
            out.push_back(avx2_table());
        if (available(Isa::Neon))
            out.push_back(neon_table());
        return out;
    }

    std::vector<double> random_vector(Rng &rng, std::size_t n)
    {
        std::vector<double> v(n);
        for (double &x : v)
            x = 2.0 * rng.uniform() - 1.0;
        return v;
    }

    // Restores the dispatch choice after a test that switches it.
    struct SelectGuard
    {
        const KernelTable *saved = &active();
        ~SelectGuard() { select(saved->isa); }
    };
}

TEST_CASE("scalar kernels against naive loops", "[kernels]")
{
    Rng rng(1);
    const KernelTable &s = scalar_table();
    for (std::size_t n : {0u, 1u, 3u, 17u, 100u})
    {
        const auto a = random_vector(rng, n), b = random_vector(rng, n);
        double dot = 0, sq = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            dot += a[i] * b[i];
            sq += a[i] * a[i];
        }
        CHECK(s.dot(a.data(), b.data(), n) == Catch::Approx(dot).margin(1e-14));
        CHECK(s.sum_squares(a.data(), n) == Catch::Approx(sq).margin(1e-14));

        auto y = b;
        s.axpy(0.5, a.data(), y.data(), n);
        auto acc = b;
        s.accumulate_squares(a.data(), acc.data(), n);
        auto z = a;
        s.scale(-3.0, z.data(), n);
        for (std::size_t i = 0; i < n; ++i)
        {
            CHECK(y[i] == Catch::Approx(b[i] + 0.5 * a[i]).margin(1e-15));
            CHECK(acc[i] == Catch::Approx(b[i] + a[i] * a[i]).margin(1e-15));
            CHECK(z[i] == -3.0 * a[i]);
        }
    }
}

TEST_CASE("vector kernels match the scalar reference", "[kernels][simd]")
{
    const auto tables = vector_tables();
    if (tables.empty())
        SUCCEED("no vector ISA on this machine");
    Rng rng(2);
    const KernelTable &s = scalar_table();
    for (const KernelTable *v : tables)
    {
        INFO("isa " << to_string(v->isa));
        for (std::size_t n = 0; n < 70; ++n)
            for (std::size_t offset = 0; offset < 4; ++offset)
            {
                // Offsets exercise unaligned starts.
                const auto a_store = random_vector(rng, n + offset), b_store = random_vector(rng, n + offset);
                const double *a = a_store.data() + offset;
                const double *b = b_store.data() + offset;

                double scale_ref = 0;
                for (std::size_t i = 0; i < n; ++i)
                    scale_ref += std::abs(a[i] * b[i]);
                CHECK(std::abs(v->dot(a, b, n) - s.dot(a, b, n)) <= 1e-12 * std::max(1.0, scale_ref));
                CHECK(std::abs(v->sum_squares(a, n) - s.sum_squares(a, n)) <= 1e-12 * std::max(1.0, s.sum_squares(a, n)));

                std::vector<double> y1(b, b + n), y2(b, b + n);
                s.axpy(0.75, a, y1.data(), n);
                v->axpy(0.75, a, y2.data(), n);
                std::vector<double> q1(b, b + n), q2(b, b + n);
                s.accumulate_squares(a, q1.data(), n);
                v->accumulate_squares(a, q2.data(), n);
                std::vector<double> z1(a, a + n), z2(a, a + n);
                s.scale(1.25, z1.data(), n);
                v->scale(1.25, z2.data(), n);
                for (std::size_t i = 0; i < n; ++i)
                {
                    CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * std::max(1.0, std::abs(y1[i])));
                    CHECK(std::abs(q1[i] - q2[i]) <= 1e-15 * std::max(1.0, std::abs(q1[i])));
                    CHECK(z1[i] == z2[i]);
                }
            }
        // Long vectors as used by the waveform correlations.
        const auto a = random_vector(rng, 4099), b = random_vector(rng, 4099);
        CHECK(std::abs(v->dot(a.data(), b.data(), a.size()) - s.dot(a.data(), b.data(), a.size())) <= 1e-12 * 4099);
    }
}

TEST_CASE("dispatch selection", "[kernels]")
{
    SelectGuard guard;
    CHECK(available(Isa::Scalar));
    CHECK(select(Isa::Scalar));
    CHECK(active().isa == Isa::Scalar);
    for (Isa isa : available_isas())
    {
        CHECK(select(isa));
        CHECK(active().isa == isa);
    }
    CHECK(parse_isa("avx2") == Isa::Avx2);
    CHECK(parse_isa("neon") == Isa::Neon);
    CHECK_FALSE(parse_isa("sse9").has_value());
#if !CHANSIM_HAVE_NEON
    CHECK_FALSE(available(Isa::Neon));
    CHECK_FALSE(select(Isa::Neon));
#endif
}

TEST_CASE("render and CLEAN agree across kernel variants", "[kernels][simd]")
{
    SelectGuard guard;
    const auto params = lookup_params(Scenario::HoveringFoliage, Receiver::RX2, Orientation::VH, 15);
    GeneratorConfig cfg;
    cfg.seed = 3;
    cfg.decay_mode = DecayInterpretation::TimeConstant;
    const SamplingGrid grid;
    const PulseTemplate pulse = template_pulse(grid);

    for (std::uint64_t i = 0; i < 10; ++i)
    {
        const auto r = generate_indexed(params, cfg, 0.0, i);
        REQUIRE(select(Isa::Scalar));
        const auto w_ref = render(r, pulse, grid, 25.0, i);
        const auto taps_ref = clean_deconvolve(w_ref, pulse);
        for (Isa isa : available_isas())
        {
            REQUIRE(select(isa));
            const auto w = render(r, pulse, grid, 25.0, i);
            REQUIRE(w.samples.size() == w_ref.samples.size());
            for (std::size_t k = 0; k < w.samples.size(); ++k)
                CHECK(std::abs(w.samples[k] - w_ref.samples[k]) <= 1e-12);
            const auto taps = clean_deconvolve(w, pulse);
            REQUIRE(taps.size() == taps_ref.size());
            for (std::size_t k = 0; k < taps.size(); ++k)
            {
                CHECK(taps[k].delay_ns == taps_ref[k].delay_ns);
                CHECK(std::abs(taps[k].amplitude - taps_ref[k].amplitude) <= 1e-9 * taps_ref[0].amplitude);
            }
        }
    }
}
