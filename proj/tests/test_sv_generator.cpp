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

#include "chansim/model.hpp"
#include "chansim/rng.hpp"
#include "chansim/sv_generator.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace chansim;
using Catch::Approx;
using chansim::test::thrown_code;

namespace
{
    // Kolmogorov-Smirnov distance between a sample and the exponential law.
    double ks_exponential(std::vector<double> x, double rate)
    {
        std::sort(x.begin(), x.end());
        const double n = static_cast<double>(x.size());
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double f = 1.0 - std::exp(-rate * x[i]);
            d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
        }
        return d;
    }

    std::vector<double> gaps(const std::vector<double> &t)
    {
        std::vector<double> g;
        for (std::size_t i = 1; i < t.size(); ++i)
            g.push_back(t[i] - t[i - 1]);
        return g;
    }

    const ScenarioParams kOpen = lookup_params(Scenario::HoveringOpen, Receiver::RX1, Orientation::VV, 15);
}

TEST_CASE("cluster arrivals start at zero and stay inside the window", "[sv]")
{
    Rng rng(1);
    for (int i = 0; i < 1000; ++i)
    {
        const auto t = draw_cluster_arrivals(0.033, 100, rng);
        REQUIRE(!t.empty());
        CHECK(t.front() == 0.0);
        CHECK(std::is_sorted(t.begin(), t.end()));
        CHECK(t.back() < 100.0);
    }
}

TEST_CASE("mean cluster count is one plus the Poisson mean", "[sv]")
{
    Rng rng(2);
    const int n = 100000;
    double count = 0;
    for (int i = 0; i < n; ++i)
        count += static_cast<double>(draw_cluster_arrivals(0.033, 100, rng).size());
    CHECK(count / n == Approx(1.0 + 0.033 * 100).epsilon(0.01));
}

TEST_CASE("vanishing cluster rate gives a single cluster", "[sv]")
{
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
        CHECK(draw_cluster_arrivals(1e-9, 100, rng).size() == 1);
}

TEST_CASE("inter-arrival means", "[sv]")
{
    Rng rng(4);
    // Long windows so the first million gaps are never censored.
    const auto clusters = gaps(draw_cluster_arrivals(0.02, 1.2e6 / 0.02, rng));
    REQUIRE(clusters.size() >= 1000000);
    double s = 0;
    for (std::size_t i = 0; i < 1000000; ++i)
        s += clusters[i];
    CHECK(s / 1e6 == Approx(50.0).epsilon(0.005));

    const auto rays = gaps(draw_ray_arrivals(0.25, 0.0, 1.2e6 / 0.25, rng));
    REQUIRE(rays.size() >= 1000000);
    s = 0;
    for (std::size_t i = 0; i < 1000000; ++i)
        s += rays[i];
    CHECK(s / 1e6 == Approx(4.0).epsilon(0.005));
}

TEST_CASE("inter-arrivals pass a KS test against the exponential law", "[sv][property]")
{
    const double critical = 1.6276 / std::sqrt(10000.0); // alpha = 0.01
    Rng rng(5);
    for (double rate : {0.013, 0.02, 0.04, 0.06, 0.2, 0.34})
    {
        auto c = gaps(draw_cluster_arrivals(rate, 2.0e4 / rate, rng));
        REQUIRE(c.size() >= 10000);
        c.resize(10000);
        CHECK(ks_exponential(c, rate) < critical);

        auto r = gaps(draw_ray_arrivals(rate, 0.0, 2.0e4 / rate, rng));
        REQUIRE(r.size() >= 10000);
        r.resize(10000);
        CHECK(ks_exponential(r, rate) < critical);
    }
}

TEST_CASE("ray arrivals", "[sv]")
{
    Rng rng(6);
    const int n = 50000;
    double count = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto r = draw_ray_arrivals(0.1, 0.0, 100, rng);
        REQUIRE(r.front() == 0.0);
        REQUIRE(r.back() < 100.0);
        count += static_cast<double>(r.size());
    }
    CHECK(count / n == Approx(11.0).epsilon(0.01));

    int single = 0;
    for (int i = 0; i < 1000; ++i)
        single += draw_ray_arrivals(0.34, 99.9, 100, rng).size() == 1 ? 1 : 0;
    CHECK(single >= 950);
    for (int i = 0; i < 1000; ++i)
        for (double tau : draw_ray_arrivals(0.34, 99.9, 100, rng))
            CHECK(99.9 + tau < 100.0);
}

TEST_CASE("non-positive rates are rejected", "[sv]")
{
    Rng rng(7);
    CHECK(thrown_code([&]
                      { draw_cluster_arrivals(0.0, 100, rng); }) == ErrorCode::InvalidRate);
    CHECK(thrown_code([&]
                      { draw_cluster_arrivals(-0.1, 100, rng); }) == ErrorCode::InvalidRate);
    CHECK(thrown_code([&]
                      { draw_ray_arrivals(0.0, 0, 100, rng); }) == ErrorCode::InvalidRate);
    ScenarioParams p = kOpen;
    p.ray_rate = 0;
    CHECK(thrown_code([&]
                      { generate(p, GeneratorConfig{}, 0.0); }) == ErrorCode::InvalidRate);
}

TEST_CASE("tap mean power examples", "[sv]")
{
    for (auto mode : {DecayInterpretation::RateAsWritten, DecayInterpretation::TimeConstant})
        CHECK(tap_mean_power(0, 0, 0.23, 8.7, 1.0, mode) == 1.0);
    CHECK(tap_mean_power(10, 0, 0.23, 8.7, 1.0, DecayInterpretation::RateAsWritten) == Approx(std::exp(-2.3)));
    CHECK(tap_mean_power(10, 0, 0.23, 8.7, 1.0, DecayInterpretation::RateAsWritten) == Approx(0.1003).margin(1e-4));
    CHECK(tap_mean_power(0, 2, 0.23, 8.7, 1.0, DecayInterpretation::TimeConstant) == Approx(std::exp(-2.0 / 8.7)));
    CHECK(tap_mean_power(0, 2, 0.23, 8.7, 1.0, DecayInterpretation::TimeConstant) == Approx(0.7946).margin(1e-4));
    CHECK(tap_mean_power(3, 4, 0.2, 0.5, 2.5, DecayInterpretation::RateAsWritten) == Approx(2.5 * std::exp(-0.6 - 2.0)));
}

TEST_CASE("generation is deterministic per seed", "[sv]")
{
    GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.amplitude_fading = AmplitudeFading::Rayleigh;
    const auto a = generate(kOpen, cfg, 0.0);
    const auto b = generate(kOpen, cfg, 0.0);
    CHECK(a.taps == b.taps);
    cfg.seed = 78;
    CHECK(generate(kOpen, cfg, 0.0).taps != a.taps);
}

TEST_CASE("realization invariants", "[sv][property]")
{
    Rng pick(8);
    const auto cells = all_cells();
    for (int i = 0; i < 400; ++i)
    {
        const TableCell &cell = cells[static_cast<std::size_t>(pick.uniform() * cells.size())];
        GeneratorConfig cfg;
        cfg.seed = 1000 + static_cast<std::uint64_t>(i);
        cfg.decay_mode = pick.uniform() < 0.5 ? DecayInterpretation::RateAsWritten : DecayInterpretation::TimeConstant;
        cfg.amplitude_fading = pick.uniform() < 0.5 ? AmplitudeFading::Deterministic : AmplitudeFading::Rayleigh;
        const double los = pick.uniform() < 0.5 ? 0.0 : 0.5 + 1.5 * pick.uniform();
        const auto r = generate(cell.params, cfg, los);

        REQUIRE(!r.taps.empty());
        double peak = 0.0;
        for (const Tap &t : r.taps)
            peak = std::max(peak, t.amplitude);
        std::map<int, double> cluster_start;
        for (std::size_t k = 0; k < r.taps.size(); ++k)
        {
            const Tap &t = r.taps[k];
            CHECK(t.delay_ns >= 0.0);
            CHECK(t.delay_ns < r.window_ns);
            CHECK(t.phase_rad >= 0.0);
            CHECK(t.phase_rad < 2 * std::numbers::pi);
            CHECK(20 * std::log10(peak / t.amplitude) <= cfg.dynamic_range_db + 1e-9);
            if (k > 0)
                CHECK(r.taps[k - 1].delay_ns <= t.delay_ns);
            if (t.ray_index == 0)
                cluster_start[t.cluster_index] = t.delay_ns;
        }
        // Cluster starts increase with the cluster index.
        double prev = -1.0;
        for (const auto &[idx, start] : cluster_start)
        {
            CHECK(start > prev);
            prev = start;
        }
        if (los > 0.0)
        {
            CHECK(r.los_applied);
            CHECK(r.taps.front().delay_ns == 0.0);
            CHECK(r.taps.front().amplitude == los);
            CHECK(r.taps.front().cluster_index == 0);
            CHECK(r.taps.front().ray_index == 0);
        }
        else if (cfg.amplitude_fading == AmplitudeFading::Deterministic)
        {
            // The first path of the first cluster carries the reference power and is the strongest.
            CHECK(r.taps.front().delay_ns == 0.0);
            CHECK(r.taps.front().amplitude == peak);
        }
    }
}

TEST_CASE("window and config validation", "[sv]")
{
    GeneratorConfig cfg;
    cfg.window_ns = 0.5;
    CHECK(thrown_code([&]
                      { generate(kOpen, cfg, 0.0); }) == ErrorCode::WindowTooSmall);
    cfg.window_ns = 100;
    cfg.dynamic_range_db = 0;
    CHECK(thrown_code([&]
                      { generate(kOpen, cfg, 0.0); }) == ErrorCode::InvalidConfig);
    cfg.dynamic_range_db = 48;
    CHECK(thrown_code([&]
                      { generate(kOpen, cfg, -1.0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("generated cluster count follows the Poisson oracle", "[sv]")
{
    GeneratorConfig cfg;
    cfg.seed = 9;
    cfg.dynamic_range_db = 1000; // keep every cluster visible
    const auto batch = generate_batch(kOpen, cfg, 0.0, 10000);
    double clusters = 0;
    for (const auto &r : batch)
    {
        std::set<int> ids;
        for (const Tap &t : r.taps)
            ids.insert(t.cluster_index);
        clusters += static_cast<double>(ids.size());
    }
    clusters /= static_cast<double>(batch.size());
    CHECK(std::abs(clusters - (1 + kOpen.cluster_rate * 100)) <= 0.15 * (1 + kOpen.cluster_rate * 100));
}

TEST_CASE("batch generation is independent of thread count", "[sv]")
{
    GeneratorConfig cfg;
    cfg.seed = 10;
    cfg.amplitude_fading = AmplitudeFading::Rayleigh;
    const auto serial = generate_batch(kOpen, cfg, 0.0, 64, 1);
    const auto threaded = generate_batch(kOpen, cfg, 0.0, 64, 4);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
    {
        CHECK(serial[i].taps == threaded[i].taps);
        CHECK(serial[i].taps == generate_indexed(kOpen, cfg, 0.0, i).taps);
    }
}

TEST_CASE("Rayleigh ensemble power matches the mean-power law", "[sv][property]")
{
    // Fixed (T, tau) lattice via the first tap of each cluster and first-cluster rays.
    const ScenarioParams p{3.0, 0.03, 20.0, 0.2, 5.0};
    GeneratorConfig cfg;
    cfg.seed = 11;
    cfg.decay_mode = DecayInterpretation::TimeConstant;
    cfg.amplitude_fading = AmplitudeFading::Rayleigh;
    cfg.dynamic_range_db = 1000;
    const std::size_t n = 100000;
    const auto batch = generate_batch(p, cfg, 0.0, n);
    double origin = 0.0;
    for (const auto &r : batch)
        for (const Tap &t : r.taps)
            if (t.cluster_index == 0 && t.ray_index == 0)
                origin += t.amplitude * t.amplitude;
    CHECK(origin / static_cast<double>(n) == Approx(1.0).epsilon(0.02));

    // First-cluster rays binned in tau and compared with the exact mean of the law at the hits.
    std::vector<double> sum(10, 0.0), expect(10, 0.0);
    std::vector<std::size_t> hits(10, 0);
    for (const auto &r : batch)
        for (const Tap &t : r.taps)
            if (t.cluster_index == 0 && t.ray_index > 0 && t.delay_ns < 10.0)
            {
                const auto b = static_cast<std::size_t>(t.delay_ns);
                sum[b] += t.amplitude * t.amplitude;
                expect[b] += tap_mean_power(0, t.delay_ns, p.cluster_decay, p.ray_decay, 1.0, cfg.decay_mode);
                ++hits[b];
            }
    for (std::size_t b = 0; b < 10; ++b)
    {
        REQUIRE(hits[b] > 5000);
        CHECK(sum[b] / expect[b] == Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("log-power regression in the first cluster recovers the ray decay", "[sv][property]")
{
    for (auto mode : {DecayInterpretation::RateAsWritten, DecayInterpretation::TimeConstant})
    {
        const ScenarioParams p = mode == DecayInterpretation::RateAsWritten ? ScenarioParams{2, 0.02, 0.2, 0.3, 0.25}
                                                                            : ScenarioParams{2, 0.02, 5.0, 0.3, 4.0};
        GeneratorConfig cfg;
        cfg.seed = 12;
        cfg.decay_mode = mode;
        cfg.amplitude_fading = AmplitudeFading::Rayleigh;
        cfg.dynamic_range_db = 1000;
        const auto batch = generate_batch(p, cfg, 0.0, 20000);

        constexpr std::size_t bins = 15;
        constexpr double width = 1.0;
        std::vector<double> power(bins, 0.0), tau(bins, 0.0);
        std::vector<double> hits(bins, 0.0);
        for (const auto &r : batch)
            for (const Tap &t : r.taps)
                if (t.cluster_index == 0 && t.ray_index > 0 && t.delay_ns < bins * width)
                {
                    const auto b = static_cast<std::size_t>(t.delay_ns / width);
                    power[b] += t.amplitude * t.amplitude;
                    tau[b] += t.delay_ns;
                    hits[b] += 1;
                }
        double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
        for (std::size_t b = 0; b < bins; ++b)
        {
            const double x = tau[b] / hits[b], y = std::log(power[b] / hits[b]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            k += 1;
        }
        const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        const double gamma_hat = mode == DecayInterpretation::RateAsWritten ? -slope : -1.0 / slope;
        CHECK(gamma_hat == Approx(p.ray_decay).epsilon(0.10));
    }
}

TEST_CASE("foliage ensembles without LOS have no dominant tap in the median", "[sv]")
{
    // Time-constant reading; under the literal rate reading the printed ray decays
    // leave the first path alone above the floor.
    const auto p = lookup_params(Scenario::HoveringFoliage, Receiver::RX1, Orientation::VV, 15);
    GeneratorConfig cfg;
    cfg.seed = 13;
    cfg.decay_mode = DecayInterpretation::TimeConstant;
    const auto batch = generate_batch(p, cfg, 0.0, 2000);
    std::vector<double> dominance;
    for (const auto &r : batch)
    {
        std::vector<double> a;
        for (const Tap &t : r.taps)
            a.push_back(t.amplitude);
        std::sort(a.rbegin(), a.rend());
        dominance.push_back(a.size() < 2 ? cfg.dynamic_range_db : 20 * std::log10(a[0] / a[1]));
    }
    std::nth_element(dominance.begin(), dominance.begin() + dominance.size() / 2, dominance.end());
    CHECK(dominance[dominance.size() / 2] < 20.0);
}

TEST_CASE("decay and fading names round-trip", "[sv]")
{
    for (auto d : {DecayInterpretation::RateAsWritten, DecayInterpretation::TimeConstant})
        CHECK(parse_decay_interpretation(to_string(d)) == d);
    for (auto f : {AmplitudeFading::Deterministic, AmplitudeFading::Rayleigh})
        CHECK(parse_amplitude_fading(to_string(f)) == f);
    CHECK(parse_decay_interpretation("tc") == DecayInterpretation::TimeConstant);
    CHECK_FALSE(parse_amplitude_fading("rician").has_value());
}
