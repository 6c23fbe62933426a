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

#ifndef CHANSIM_GEOMETRY_HPP
#define CHANSIM_GEOMETRY_HPP

#include "chansim/model.hpp"

#include <filesystem>
#include <memory>
#include <vector>

namespace chansim
{
    inline constexpr double kDefaultXpd_dB = 10.0;

    // Angle of the link from the vertical axis: 90 - atan(h / x), in degrees.
    // Requires x_m > 0 and h_m >= 0, throws Error(InvalidGeometry) otherwise.
    double elevation_angle(double x_m, double h_m);

    // Builds the full geometry (distance and angle) for a horizontal distance and vertical separation.
    LinkGeometry make_geometry(double x_m, double h_m);

    // Geometry between the UAV at uav_height_m and the given receiver antenna.
    LinkGeometry make_geometry(const LinkConfig &link);

    // Normalized elevation-plane amplitude pattern. The default is |sin theta|;
    // a tabulated pattern may be loaded from CSV rows of (angle_deg, gain_linear).
    class ElevationPattern
    {
    public:
        ElevationPattern() = default;

        // Samples are sorted by angle and normalized so the maximum gain is 1.
        static ElevationPattern tabulated(std::vector<double> angles_deg, std::vector<double> gains);
        static ElevationPattern load_csv(const std::filesystem::path &file);

        // Gain at theta_deg (taken modulo 360). Tabulated patterns interpolate linearly
        // and hold the end values outside the tabulated span.
        double gain(double theta_deg) const;

        bool is_tabulated() const noexcept { return !angles_.empty(); }

    private:
        std::vector<double> angles_;
        std::vector<double> gains_;
    };

    // Combined TX.RX amplitude gain of the LOS component, sqrt(G_T G_R) with both
    // antennas following the same pattern. VH adds the cross-polarization factor
    // 10^(-xpd_db / 20).
    double los_gain(double theta_deg, Orientation orientation, double xpd_db = kDefaultXpd_dB,
                    const ElevationPattern &pattern = ElevationPattern{});

    // Extra loss (dB) applied to the co-polarized LOS component: 0 for VV, xpd_db for VH.
    double polarization_power_loss(Orientation orientation, double xpd_db);
}

#endif
