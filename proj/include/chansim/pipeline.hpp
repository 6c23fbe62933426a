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

#ifndef CHANSIM_PIPELINE_HPP
#define CHANSIM_PIPELINE_HPP

#include "chansim/analysis.hpp"
#include "chansim/link_budget.hpp"
#include "chansim/model.hpp"
#include "chansim/sv_generator.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chansim
{
    // Everything needed to reproduce one generation run.
    struct RunConfig
    {
        Scenario scenario = Scenario::HoveringOpen;
        Receiver receiver = Receiver::RX1;
        Orientation orientation = Orientation::VV;
        double x_m = 15.0;
        double h_m = 10.0; // UAV height above ground
        std::size_t n_realizations = 100;
        std::uint64_t seed = 0;
        DecayInterpretation decay_mode = DecayInterpretation::RateAsWritten;
        AmplitudeFading amplitude_fading = AmplitudeFading::Deterministic;
        double xpd_db = kDefaultXpd_dB;
        std::optional<double> snr_db;
        std::optional<bool> los; // unset: on, except for the foliage scenario
        std::optional<ScenarioParams> params; // overrides the table lookup
        double window_ns = 100.0;
        double dynamic_range_db = 48.0;
        bool waveforms = false;
    };

    bool los_enabled(const RunConfig &config) noexcept;

    // Throws Error(InvalidConfig / InvalidGeometry / UnknownCell).
    void validate(const RunConfig &config);

    ScenarioParams resolve_params(const RunConfig &config);
    LinkGeometry run_geometry(const RunConfig &config);
    RadioConstants run_constants(const RunConfig &config);
    GeneratorConfig generator_config(const RunConfig &config);
    double run_los_amplitude(const RunConfig &config);

    std::vector<ChannelRealization> generate_ensemble(const RunConfig &config, unsigned jobs = 1);

    // Ensemble-mean received power converted to path loss against the 1 m free-space reference.
    double simulated_path_loss_db(const RunConfig &config, unsigned jobs = 1);

    nlohmann::json to_json(const RunConfig &config);

    // Overlays the fields present in `j` onto `base`.
    RunConfig run_config_from_json(const nlohmann::json &j, RunConfig base = {});

    // ----- Round trip ----------------------------------------------------

    inline constexpr double kRateTolerance = 0.15;
    inline constexpr double kDecayTolerance = 0.20;
    inline constexpr std::size_t kRecommendedRoundTripSize = 100;

    struct RoundTripVerdict
    {
        TableCell cell;
        std::size_t n_realizations = 0;
        std::uint64_t seed = 0;
        std::optional<ParamEstimate> estimate;
        double chi_error = 0.0; // relative
        double eta_error = 0.0;
        double varsigma_error = 0.0;
        double gamma_error = 0.0;
        bool pass = false;
        std::string note;
    };

    // Generates n realizations of the cell (deterministic amplitudes, LOS suppressed),
    // estimates the parameters and compares them with the table entries.
    RoundTripVerdict roundtrip_cell(const TableCell &cell, std::size_t n, std::uint64_t seed,
                                    DecayInterpretation decay_mode = DecayInterpretation::RateAsWritten,
                                    unsigned jobs = 1);

    // Seed used for cell `index` of a full-table sweep.
    std::uint64_t sweep_seed(std::uint64_t seed, std::size_t index) noexcept;

    nlohmann::json to_json(const RoundTripVerdict &v);
}

#endif
