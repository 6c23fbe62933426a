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

#ifndef CHANSIM_SV_GENERATOR_HPP
#define CHANSIM_SV_GENERATOR_HPP

#include "chansim/model.hpp"
#include "chansim/rng.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace chansim
{
    // How the printed decay constants enter the doubly exponential power law.
    //   RateAsWritten: P = P00 exp(-T eta) exp(-tau gamma), eta and gamma in 1/ns
    //   TimeConstant:  P = P00 exp(-T / eta) exp(-tau / gamma), eta and gamma in ns
    enum class DecayInterpretation
    {
        RateAsWritten,
        TimeConstant
    };

    enum class AmplitudeFading
    {
        Deterministic, // amplitude = sqrt(mean power)
        Rayleigh       // Rayleigh amplitude with the mean power as its mean square
    };

    std::string_view to_string(DecayInterpretation d) noexcept;
    std::string_view to_string(AmplitudeFading f) noexcept;
    std::optional<DecayInterpretation> parse_decay_interpretation(std::string_view text);
    std::optional<AmplitudeFading> parse_amplitude_fading(std::string_view text);

    struct GeneratorConfig
    {
        double window_ns = 100.0;
        DecayInterpretation decay_mode = DecayInterpretation::RateAsWritten;
        AmplitudeFading amplitude_fading = AmplitudeFading::Deterministic;
        double dynamic_range_db = 48.0;
        double reference_power = 1.0; // mean power of the first path of the first cluster
        std::uint64_t seed = 0;
    };

    // Cluster start times: T_0 = 0 followed by exponential(rate) gaps, all < window_ns.
    std::vector<double> draw_cluster_arrivals(double rate_per_ns, double window_ns, Rng &rng);

    // Ray offsets inside a cluster starting at cluster_start_ns: tau_0 = 0 followed by
    // exponential(rate) gaps while cluster_start_ns + tau < window_ns.
    std::vector<double> draw_ray_arrivals(double rate_per_ns, double cluster_start_ns, double window_ns, Rng &rng);

    double tap_mean_power(double cluster_delay_ns, double ray_delay_ns, double cluster_decay, double ray_decay,
                          double reference_power, DecayInterpretation mode);

    // One realization. los_amplitude > 0 replaces the delay-0 tap by the deterministic
    // LOS component; 0 leaves an NLOS-only channel. The RNG stream is seeded from config.seed.
    ChannelRealization generate(const ScenarioParams &params, const GeneratorConfig &config, double los_amplitude);

    // Realization `index` of a batch: the same as generate() with the seed replaced by
    // stream_seed(config.seed, index).
    ChannelRealization generate_indexed(const ScenarioParams &params, const GeneratorConfig &config,
                                        double los_amplitude, std::uint64_t index);

    // Batch of n realizations. jobs > 1 spreads the work over threads; the result
    // does not depend on jobs.
    std::vector<ChannelRealization> generate_batch(const ScenarioParams &params, const GeneratorConfig &config,
                                                   double los_amplitude, std::size_t n, unsigned jobs = 1);
}

#endif
