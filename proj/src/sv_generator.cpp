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

#include "chansim/sv_generator.hpp"
#include "chansim/error.hpp"
#include "chansim/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

namespace chansim
{
    namespace
    {
        void require_rate(double rate, const char *what)
        {
            if (!(rate > 0.0) || !std::isfinite(rate))
            {
                std::ostringstream os;
                os << what << " must be a positive finite rate, got " << rate;
                throw Error(ErrorCode::InvalidRate, os.str());
            }
        }

        void validate(const ScenarioParams &p, const GeneratorConfig &c)
        {
            require_rate(p.cluster_rate, "cluster arrival rate");
            require_rate(p.ray_rate, "ray arrival rate");
            if (!(p.cluster_decay > 0.0) || !(p.ray_decay > 0.0))
                throw Error(ErrorCode::InvalidConfig, "decay constants must be positive");
            if (!(c.window_ns >= 1.0) || !std::isfinite(c.window_ns))
                throw Error(ErrorCode::WindowTooSmall, "window must be at least 1 ns, got " + std::to_string(c.window_ns));
            if (!(c.dynamic_range_db > 0.0))
                throw Error(ErrorCode::InvalidConfig, "dynamic range must be positive");
            if (!(c.reference_power > 0.0) || !std::isfinite(c.reference_power))
                throw Error(ErrorCode::InvalidConfig, "reference power must be positive and finite");
        }
    }

    std::string_view to_string(DecayInterpretation d) noexcept
    {
        return d == DecayInterpretation::RateAsWritten ? "rate-as-written" : "time-constant";
    }

    std::string_view to_string(AmplitudeFading f) noexcept
    {
        return f == AmplitudeFading::Deterministic ? "deterministic" : "rayleigh";
    }

    std::optional<DecayInterpretation> parse_decay_interpretation(std::string_view text)
    {
        if (text == "rate-as-written" || text == "rate")
            return DecayInterpretation::RateAsWritten;
        if (text == "time-constant" || text == "tc")
            return DecayInterpretation::TimeConstant;
        return std::nullopt;
    }

    std::optional<AmplitudeFading> parse_amplitude_fading(std::string_view text)
    {
        if (text == "deterministic")
            return AmplitudeFading::Deterministic;
        if (text == "rayleigh")
            return AmplitudeFading::Rayleigh;
        return std::nullopt;
    }

    std::vector<double> draw_cluster_arrivals(double rate_per_ns, double window_ns, Rng &rng)
    {
        require_rate(rate_per_ns, "cluster arrival rate");
        std::vector<double> starts{0.0};
        double t = rng.exponential(rate_per_ns);
        while (t < window_ns)
        {
            starts.push_back(t);
            t += rng.exponential(rate_per_ns);
        }
        return starts;
    }

    std::vector<double> draw_ray_arrivals(double rate_per_ns, double cluster_start_ns, double window_ns, Rng &rng)
    {
        require_rate(rate_per_ns, "ray arrival rate");
        std::vector<double> offsets{0.0};
        double tau = rng.exponential(rate_per_ns);
        while (cluster_start_ns + tau < window_ns)
        {
            offsets.push_back(tau);
            tau += rng.exponential(rate_per_ns);
        }
        return offsets;
    }

    double tap_mean_power(double cluster_delay_ns, double ray_delay_ns, double cluster_decay, double ray_decay,
                          double reference_power, DecayInterpretation mode)
    {
        if (mode == DecayInterpretation::RateAsWritten)
            return reference_power * std::exp(-cluster_delay_ns * cluster_decay) * std::exp(-ray_delay_ns * ray_decay);
        return reference_power * std::exp(-cluster_delay_ns / cluster_decay) * std::exp(-ray_delay_ns / ray_decay);
    }

    ChannelRealization generate(const ScenarioParams &params, const GeneratorConfig &config, double los_amplitude)
    {
        validate(params, config);
        if (!(los_amplitude >= 0.0) || !std::isfinite(los_amplitude))
            throw Error(ErrorCode::InvalidConfig, "LOS amplitude must be finite and non-negative");

        Rng rng(config.seed);
        ChannelRealization out;
        out.params = params;
        out.seed = config.seed;
        out.window_ns = config.window_ns;
        out.dynamic_range_db = config.dynamic_range_db;

        // Arrival times first, then per-tap amplitude and phase in generation order.
        const std::vector<double> starts = draw_cluster_arrivals(params.cluster_rate, config.window_ns, rng);
        for (std::size_t l = 0; l < starts.size(); ++l)
        {
            const std::vector<double> rays = draw_ray_arrivals(params.ray_rate, starts[l], config.window_ns, rng);
            for (std::size_t m = 0; m < rays.size(); ++m)
            {
                Tap tap;
                tap.delay_ns = starts[l] + rays[m];
                tap.amplitude = tap_mean_power(starts[l], rays[m], params.cluster_decay, params.ray_decay,
                                               config.reference_power, config.decay_mode);
                tap.cluster_index = static_cast<int>(l);
                tap.ray_index = static_cast<int>(m);
                out.taps.push_back(tap);
            }
        }
        for (Tap &tap : out.taps)
        {
            const double mean_power = tap.amplitude;
            tap.amplitude = config.amplitude_fading == AmplitudeFading::Deterministic ? std::sqrt(mean_power)
                                                                                        : rng.rayleigh(mean_power);
            tap.phase_rad = rng.phase();
        }

        // Tap (0, 0) is generated first and sits at delay 0.
        if (los_amplitude > 0.0)
        {
            out.taps.front().amplitude = los_amplitude;
            out.taps.front().phase_rad = 0.0;
            out.los_applied = true;
        }

        std::stable_sort(out.taps.begin(), out.taps.end(), [](const Tap &a, const Tap &b)
                         { return a.delay_ns < b.delay_ns; });

        double peak = 0.0;
        for (const Tap &tap : out.taps)
            peak = std::max(peak, tap.amplitude);
        const double floor = peak * std::pow(10.0, -config.dynamic_range_db / 20.0);
        std::erase_if(out.taps, [floor](const Tap &t)
                      { return !(t.amplitude >= floor) || t.amplitude <= 0.0; });
        return out;
    }

    ChannelRealization generate_indexed(const ScenarioParams &params, const GeneratorConfig &config,
                                        double los_amplitude, std::uint64_t index)
    {
        GeneratorConfig c = config;
        c.seed = stream_seed(config.seed, index);
        return generate(params, c, los_amplitude);
    }

    std::vector<ChannelRealization> generate_batch(const ScenarioParams &params, const GeneratorConfig &config,
                                                   double los_amplitude, std::size_t n, unsigned jobs)
    {
        validate(params, config);
        std::vector<ChannelRealization> out(n);
        parallel_for(n, jobs, [&](std::size_t i)
                     { out[i] = generate_indexed(params, config, los_amplitude, i); });
        return out;
    }
}
