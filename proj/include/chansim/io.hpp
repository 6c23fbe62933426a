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

#ifndef CHANSIM_IO_HPP
#define CHANSIM_IO_HPP

#include "chansim/analysis.hpp"
#include "chansim/model.hpp"
#include "chansim/sv_generator.hpp"
#include "chansim/waveform.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace chansim::io
{
    inline constexpr std::string_view kTapCsvHeader = "delay_ns,amplitude,phase_rad,cluster_index,ray_index";
    inline constexpr std::string_view kWaveformCsvHeader = "sample_index,time_ns,value";

    // Decimal text with 17 significant digits; parses back to the identical double.
    std::string format_double(double v);

    // ----- Realizations --------------------------------------------------

    std::string taps_to_csv(std::span<const Tap> taps);

    // Throws Error(ParseError) naming `source` and the offending line.
    std::vector<Tap> taps_from_csv(std::string_view text, const std::string &source = "<memory>");

    nlohmann::json to_json(const ScenarioParams &p);
    ScenarioParams params_from_json(const nlohmann::json &j);
    nlohmann::json to_json(const GeneratorConfig &c);
    GeneratorConfig generator_config_from_json(const nlohmann::json &j);
    nlohmann::json to_json(const LinkGeometry &g);

    // Realization with its generator configuration embedded for reproducibility.
    nlohmann::json to_json(const ChannelRealization &r, const GeneratorConfig &config);
    ChannelRealization realization_from_json(const nlohmann::json &j);

    // ----- Waveforms -----------------------------------------------------

    std::string waveform_to_csv(const WaveformRecord &w);
    WaveformRecord waveform_from_csv(std::string_view text, const SamplingGrid &grid = {},
                                     const std::string &source = "<memory>");
    nlohmann::json to_json(const SamplingGrid &g);
    SamplingGrid grid_from_json(const nlohmann::json &j);
    nlohmann::json to_json(const WaveformRecord &w);
    WaveformRecord waveform_from_json(const nlohmann::json &j);

    // ----- Tables and reports --------------------------------------------

    // scenario -> receiver -> orientation -> distance -> params
    nlohmann::json tables_to_json();

    nlohmann::json to_json(const Pdp &pdp);
    nlohmann::json to_json(const ClusterEstimate &c);
    nlohmann::json to_json(const ParamEstimate &e);

    // ----- Files ---------------------------------------------------------

    std::string read_file(const std::filesystem::path &path);

    // Writes to a temporary sibling and renames it over `path`.
    void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

    // Canonical JSON text (sorted keys, two-space indent, trailing newline).
    std::string dump(const nlohmann::json &j);
}

#endif
