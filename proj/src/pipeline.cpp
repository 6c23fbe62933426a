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

#include "chansim/pipeline.hpp"
#include "chansim/error.hpp"
#include "chansim/geometry.hpp"
#include "chansim/io.hpp"
#include "chansim/rng.hpp"

#include <cmath>

namespace chansim
{
    using nlohmann::json;

    bool los_enabled(const RunConfig &config) noexcept
    {
        return config.los.value_or(config.scenario != Scenario::HoveringFoliage);
    }

    void validate(const RunConfig &config)
    {
        if (config.n_realizations < 1)
            throw Error(ErrorCode::InvalidConfig, "n_realizations must be at least 1");
        if (!(config.x_m > 0.0) || !std::isfinite(config.x_m))
            throw Error(ErrorCode::InvalidGeometry, "x_m must be positive");
        if (!(config.h_m > receiver_height_m(config.receiver)) || !std::isfinite(config.h_m))
            throw Error(ErrorCode::InvalidGeometry, "h_m must exceed the receiver antenna height");
        if (!(config.xpd_db >= 0.0))
            throw Error(ErrorCode::InvalidConfig, "xpd_db must be non-negative");
        if (config.snr_db && !std::isfinite(*config.snr_db))
            throw Error(ErrorCode::InvalidConfig, "snr_db must be finite");
        if (!(config.dynamic_range_db > 0.0))
            throw Error(ErrorCode::InvalidConfig, "dynamic_range_db must be positive");
        if (!(config.window_ns >= 1.0))
            throw Error(ErrorCode::WindowTooSmall, "window_ns must be at least 1 ns");
        resolve_params(config);
    }

    ScenarioParams resolve_params(const RunConfig &config)
    {
        if (config.params)
            return *config.params;
        return lookup_params(config.scenario, config.receiver, config.orientation, config.x_m);
    }

    LinkGeometry run_geometry(const RunConfig &config)
    {
        return make_geometry(LinkConfig{config.receiver, config.orientation, config.x_m, config.h_m});
    }

    RadioConstants run_constants(const RunConfig &config)
    {
        RadioConstants c;
        c.xpd_db = config.xpd_db;
        return c;
    }

    GeneratorConfig generator_config(const RunConfig &config)
    {
        GeneratorConfig g;
        g.window_ns = config.window_ns;
        g.decay_mode = config.decay_mode;
        g.amplitude_fading = config.amplitude_fading;
        g.dynamic_range_db = config.dynamic_range_db;
        g.reference_power = nlos_reference_power(run_geometry(config), run_constants(config));
        g.seed = config.seed;
        return g;
    }

    double run_los_amplitude(const RunConfig &config)
    {
        if (!los_enabled(config))
            return 0.0;
        return los_amplitude(run_geometry(config), config.orientation, run_constants(config));
    }

    std::vector<ChannelRealization> generate_ensemble(const RunConfig &config, unsigned jobs)
    {
        validate(config);
        auto ensemble = generate_batch(resolve_params(config), generator_config(config), run_los_amplitude(config),
                                       config.n_realizations, jobs);
        const LinkGeometry geometry = run_geometry(config);
        for (auto &r : ensemble)
            r.geometry = geometry;
        return ensemble;
    }

    double simulated_path_loss_db(const RunConfig &config, unsigned jobs)
    {
        const auto ensemble = generate_ensemble(config, jobs);
        const RadioConstants constants = run_constants(config);
        return path_loss_db(mean_received_power(ensemble).total, reference_received_power(constants), constants);
    }

    json to_json(const RunConfig &c)
    {
        json j{{"scenario", std::string(to_string(c.scenario))},
               {"receiver", std::string(to_string(c.receiver))},
               {"orientation", std::string(to_string(c.orientation))},
               {"x_m", c.x_m},
               {"h_m", c.h_m},
               {"n_realizations", c.n_realizations},
               {"seed", c.seed},
               {"decay_mode", std::string(to_string(c.decay_mode))},
               {"amplitude_fading", std::string(to_string(c.amplitude_fading))},
               {"xpd_db", c.xpd_db},
               {"snr_db", c.snr_db ? json(*c.snr_db) : json(nullptr)},
               {"los", los_enabled(c)},
               {"params", c.params ? io::to_json(*c.params) : json(nullptr)},
               {"window_ns", c.window_ns},
               {"dynamic_range_db", c.dynamic_range_db},
               {"waveforms", c.waveforms}};
        return j;
    }

    namespace
    {
        template <typename E>
        E parse_enum(const json &j, const char *key, std::optional<E> (*parse)(std::string_view))
        {
            const std::string s = j.at(key).get<std::string>();
            const auto v = parse(s);
            if (!v)
                throw Error(ErrorCode::InvalidConfig, std::string("invalid ") + key + " '" + s + "'");
            return *v;
        }
    }

    RunConfig run_config_from_json(const json &j, RunConfig base)
    {
        if (!j.is_object())
            throw Error(ErrorCode::InvalidConfig, "run configuration must be a JSON object");
        try
        {
            if (j.contains("scenario"))
                base.scenario = parse_enum<Scenario>(j, "scenario", parse_scenario);
            if (j.contains("receiver"))
                base.receiver = parse_enum<Receiver>(j, "receiver", parse_receiver);
            if (j.contains("orientation"))
                base.orientation = parse_enum<Orientation>(j, "orientation", parse_orientation);
            if (j.contains("decay_mode"))
                base.decay_mode = parse_enum<DecayInterpretation>(j, "decay_mode", parse_decay_interpretation);
            if (j.contains("amplitude_fading"))
                base.amplitude_fading = parse_enum<AmplitudeFading>(j, "amplitude_fading", parse_amplitude_fading);
            base.x_m = j.value("x_m", base.x_m);
            base.h_m = j.value("h_m", base.h_m);
            base.n_realizations = j.value("n_realizations", base.n_realizations);
            base.seed = j.value("seed", base.seed);
            base.xpd_db = j.value("xpd_db", base.xpd_db);
            if (j.contains("snr_db"))
                base.snr_db = j.at("snr_db").is_null() ? std::nullopt : std::optional<double>(j.at("snr_db").get<double>());
            if (j.contains("los") && !j.at("los").is_null())
                base.los = j.at("los").get<bool>();
            if (j.contains("params"))
                base.params = j.at("params").is_null() ? std::nullopt
                                                       : std::optional<ScenarioParams>(io::params_from_json(j.at("params")));
            base.window_ns = j.value("window_ns", base.window_ns);
            base.dynamic_range_db = j.value("dynamic_range_db", base.dynamic_range_db);
            base.waveforms = j.value("waveforms", base.waveforms);
        }
        catch (const json::exception &e)
        {
            throw Error(ErrorCode::InvalidConfig, std::string("bad run configuration: ") + e.what());
        }
        return base;
    }

    std::uint64_t sweep_seed(std::uint64_t seed, std::size_t index) noexcept
    {
        return stream_seed(seed ^ 0xA5A5A5A55A5A5A5AULL, index);
    }

    RoundTripVerdict roundtrip_cell(const TableCell &cell, std::size_t n, std::uint64_t seed,
                                    DecayInterpretation decay_mode, unsigned jobs)
    {
        RunConfig config;
        config.scenario = cell.scenario;
        config.receiver = cell.receiver;
        config.orientation = cell.orientation;
        config.x_m = cell.horizontal_distance_m;
        config.n_realizations = n;
        config.seed = seed;
        config.decay_mode = decay_mode;
        config.amplitude_fading = AmplitudeFading::Deterministic;
        config.los = false;
        config.params = cell.params;

        RoundTripVerdict v;
        v.cell = cell;
        v.n_realizations = n;
        v.seed = seed;

        const auto ensemble = generate_ensemble(config, jobs);
        try
        {
            v.estimate = estimate_params(ensemble, decay_mode);
        }
        catch (const Error &e)
        {
            if (e.code() != ErrorCode::InsufficientData)
                throw;
            v.note = e.what();
            return v;
        }
        const auto rel = [](double est, double truth)
        { return std::abs(est - truth) / truth; };
        v.chi_error = rel(v.estimate->chi_hat, cell.params.cluster_rate);
        v.eta_error = rel(v.estimate->eta_hat, cell.params.cluster_decay);
        v.varsigma_error = rel(v.estimate->varsigma_hat, cell.params.ray_rate);
        v.gamma_error = rel(v.estimate->gamma_hat, cell.params.ray_decay);
        v.pass = v.chi_error <= kRateTolerance && v.varsigma_error <= kRateTolerance &&
                 v.eta_error <= kDecayTolerance && v.gamma_error <= kDecayTolerance;
        return v;
    }

    json to_json(const RoundTripVerdict &v)
    {
        json j{{"scenario", std::string(to_string(v.cell.scenario))},
               {"receiver", std::string(to_string(v.cell.receiver))},
               {"orientation", std::string(to_string(v.cell.orientation))},
               {"x_m", v.cell.horizontal_distance_m},
               {"n_realizations", v.n_realizations},
               {"seed", v.seed},
               {"expected", io::to_json(v.cell.params)},
               {"estimate", v.estimate ? io::to_json(*v.estimate) : json(nullptr)},
               {"relative_error", {{"chi", v.chi_error}, {"eta", v.eta_error}, {"varsigma", v.varsigma_error}, {"gamma", v.gamma_error}}},
               {"tolerance", {{"rates", kRateTolerance}, {"decays", kDecayTolerance}}},
               {"verdict", v.pass ? "PASS" : "FAIL"}};
        if (!v.note.empty())
            j["note"] = v.note;
        return j;
    }
}
