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

#ifndef CHANSIM_MODEL_HPP
#define CHANSIM_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chansim
{
    // ----- Measurement coordinates -----------------------------------------

    enum class Scenario
    {
        HoveringOpen,    // UAV hovering, unobstructed link
        HoveringFoliage, // UAV hovering, link partially blocked by a tree
        MovingCircle     // UAV circling the receivers at constant distance
    };

    enum class Receiver
    {
        RX1, // antenna 0.10 m above ground
        RX2  // antenna 1.5 m above ground
    };

    // Transmit/receive antenna orientation pair
    enum class Orientation
    {
        VV, // both vertical, co-polarized
        VH  // transmitter rotated 90 degrees, cross-polarized
    };

    inline constexpr std::array<Scenario, 3> kAllScenarios = {Scenario::HoveringOpen, Scenario::HoveringFoliage, Scenario::MovingCircle};
    inline constexpr std::array<Receiver, 2> kAllReceivers = {Receiver::RX1, Receiver::RX2};
    inline constexpr std::array<Orientation, 2> kAllOrientations = {Orientation::VV, Orientation::VH};
    inline constexpr std::array<double, 2> kTableDistances_m = {15.0, 30.0};

    inline constexpr double kRx1Height_m = 0.10;
    inline constexpr double kRx2Height_m = 1.5;

    constexpr double receiver_height_m(Receiver rx) noexcept
    {
        return rx == Receiver::RX1 ? kRx1Height_m : kRx2Height_m;
    }

    std::string_view to_string(Scenario s) noexcept;
    std::string_view to_string(Receiver r) noexcept;
    std::string_view to_string(Orientation o) noexcept;

    // Accepts the CLI spellings ("hovering-open", "RX1", "VV"); case-insensitive.
    std::optional<Scenario> parse_scenario(std::string_view text);
    std::optional<Receiver> parse_receiver(std::string_view text);
    std::optional<Orientation> parse_orientation(std::string_view text);

    struct LinkConfig
    {
        Receiver receiver = Receiver::RX1;
        Orientation orientation = Orientation::VV;
        double horizontal_distance_m = 15.0;
        double uav_height_m = 10.0;
    };

    // ----- Model parameters ------------------------------------------------

    // One column of the published parameter tables. Decay constants are kept
    // exactly as printed; how they enter the power law is chosen by the
    // generator's DecayInterpretation.
    struct ScenarioParams
    {
        double n_clusters_mean = 0.0; // mean cluster count over the 100 ns scan
        double cluster_rate = 0.0;    // 1/ns
        double cluster_decay = 0.0;   // as printed
        double ray_rate = 0.0;        // 1/ns
        double ray_decay = 0.0;       // as printed

        friend bool operator==(const ScenarioParams &, const ScenarioParams &) = default;
    };

    struct TableCell
    {
        Scenario scenario;
        Receiver receiver;
        Orientation orientation;
        double horizontal_distance_m;
        ScenarioParams params;
    };

    struct TableViolation
    {
        TableCell cell;
        std::string message;
    };

    // Exact table lookup; throws Error(UnknownCell) unless the distance is 15 or 30 m.
    ScenarioParams lookup_params(Scenario scenario, Receiver receiver, Orientation orientation, double horizontal_distance_m);

    // All 24 published cells in table order (scenario, then RX1 VV, RX2 VV, RX1 VH, RX2 VH, then distance).
    std::vector<TableCell> all_cells();

    // Checks positivity and the cluster_rate ~ n_clusters_mean / 100 identity.
    std::vector<TableViolation> validate_cells(std::span<const TableCell> cells);
    std::vector<TableViolation> validate_tables();

    inline constexpr double kRateIdentityTolerance = 5e-4;

    // ----- Realizations ----------------------------------------------------

    struct LinkGeometry
    {
        double x_m = 0.0;       // horizontal distance
        double h_m = 0.0;       // vertical separation (UAV height minus RX height)
        double d_m = 0.0;       // link distance
        double theta_deg = 0.0; // angle of the link measured from the vertical axis
    };

    struct Tap
    {
        double delay_ns = 0.0;  // absolute excess delay T_l + tau_lm
        double amplitude = 0.0; // linear
        double phase_rad = 0.0; // [0, 2 pi)
        int cluster_index = 0;
        int ray_index = 0;

        friend bool operator==(const Tap &, const Tap &) = default;
    };

    struct ChannelRealization
    {
        std::vector<Tap> taps; // sorted by delay
        ScenarioParams params;
        LinkGeometry geometry;
        std::uint64_t seed = 0;
        double window_ns = 100.0;
        double dynamic_range_db = 48.0;
        bool los_applied = false; // delay-0 tap carries the deterministic LOS amplitude
    };
}

#endif
