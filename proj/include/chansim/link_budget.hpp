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

#ifndef CHANSIM_LINK_BUDGET_HPP
#define CHANSIM_LINK_BUDGET_HPP

#include "chansim/geometry.hpp"
#include "chansim/model.hpp"

#include <span>

namespace chansim
{
    inline constexpr double kSpeedOfLight_mps = 299792458.0;

    // Sounder and link constants. nlos_reference_db places the first NLOS path
    // relative to the unobstructed free-space LOS power at the same distance.
    struct RadioConstants
    {
        double center_freq_hz = 4.3e9;
        double tx_power_dbm = -14.5;
        double rx_sensitivity_dbm = -104.0;
        double noise_figure_db = 4.8;
        double ref_distance_m = 1.0;
        double xpd_db = kDefaultXpd_dB;
        double nlos_reference_db = -20.0;

        double wavelength_m() const noexcept { return kSpeedOfLight_mps / center_freq_hz; }
    };

    struct ReceivedPower
    {
        double total = 0.0;
        double los = 0.0;
        double nlos = 0.0;
    };

    // Free-space LOS amplitude lambda / (4 pi d) times the combined antenna/polarization gain.
    double los_amplitude(const LinkGeometry &geometry, Orientation orientation, const RadioConstants &constants = {},
                         const ElevationPattern &pattern = ElevationPattern{});

    // Mean power of the first NLOS path: (lambda / (4 pi d))^2 10^(nlos_reference_db / 10).
    double nlos_reference_power(const LinkGeometry &geometry, const RadioConstants &constants = {});

    // LOS power is the delay-0 tap when the realization carries a LOS component, else 0.
    ReceivedPower received_power(const ChannelRealization &realization);

    // Ensemble average of received_power over realizations.
    ReceivedPower mean_received_power(std::span<const ChannelRealization> ensemble);

    // 20 log10(4 pi d_ref / lambda) in dB.
    double free_space_reference_loss_db(const RadioConstants &constants = {});

    // L = 20 log10(4 pi d_ref / lambda) + 10 log10(p_at_ref / p_at_d).
    double path_loss_db(double p_at_d, double p_at_ref, const RadioConstants &constants = {});

    // Power gain at the reference distance with boresight antennas, (lambda / (4 pi d_ref))^2.
    double reference_received_power(const RadioConstants &constants = {});

    double link_margin_db(double path_loss_db, const RadioConstants &constants = {});
}

#endif
