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

#include "chansim/link_budget.hpp"
#include "chansim/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace chansim
{
    namespace
    {
        void require_geometry(const LinkGeometry &g)
        {
            if (!(g.d_m > 0.0) || !std::isfinite(g.d_m))
                throw Error(ErrorCode::InvalidGeometry, "link distance must be positive");
        }
    }

    double los_amplitude(const LinkGeometry &geometry, Orientation orientation, const RadioConstants &constants,
                         const ElevationPattern &pattern)
    {
        require_geometry(geometry);
        const double spreading = constants.wavelength_m() / (4.0 * std::numbers::pi * geometry.d_m);
        return spreading * los_gain(geometry.theta_deg, orientation, constants.xpd_db, pattern);
    }

    double nlos_reference_power(const LinkGeometry &geometry, const RadioConstants &constants)
    {
        require_geometry(geometry);
        const double spreading = constants.wavelength_m() / (4.0 * std::numbers::pi * geometry.d_m);
        return spreading * spreading * std::pow(10.0, constants.nlos_reference_db / 10.0);
    }

    ReceivedPower received_power(const ChannelRealization &realization)
    {
        if (realization.taps.empty())
            throw Error(ErrorCode::EmptyRealization, "realization has no taps");

        ReceivedPower p;
        bool los_taken = false;
        for (const Tap &tap : realization.taps)
        {
            const double power = tap.amplitude * tap.amplitude;
            if (realization.los_applied && !los_taken && tap.delay_ns == 0.0)
            {
                p.los = power;
                los_taken = true;
            }
            else
                p.nlos += power;
        }
        p.total = p.los + p.nlos;
        return p;
    }

    ReceivedPower mean_received_power(std::span<const ChannelRealization> ensemble)
    {
        if (ensemble.empty())
            throw Error(ErrorCode::EmptyInput, "no realizations to average");
        ReceivedPower acc;
        for (const ChannelRealization &r : ensemble)
        {
            const ReceivedPower p = received_power(r);
            acc.los += p.los;
            acc.nlos += p.nlos;
        }
        const double n = static_cast<double>(ensemble.size());
        acc.los /= n;
        acc.nlos /= n;
        acc.total = acc.los + acc.nlos;
        return acc;
    }

    double free_space_reference_loss_db(const RadioConstants &constants)
    {
        return 20.0 * std::log10(4.0 * std::numbers::pi * constants.ref_distance_m / constants.wavelength_m());
    }

    double path_loss_db(double p_at_d, double p_at_ref, const RadioConstants &constants)
    {
        if (!(p_at_d > 0.0) || !(p_at_ref > 0.0))
        {
            std::ostringstream os;
            os << "path loss needs positive powers, got p_at_d=" << p_at_d << " p_at_ref=" << p_at_ref;
            throw Error(ErrorCode::NonPositivePower, os.str());
        }
        return free_space_reference_loss_db(constants) + 10.0 * std::log10(p_at_ref / p_at_d);
    }

    double reference_received_power(const RadioConstants &constants)
    {
        const double a = constants.wavelength_m() / (4.0 * std::numbers::pi * constants.ref_distance_m);
        return a * a;
    }

    double link_margin_db(double path_loss_db, const RadioConstants &constants)
    {
        return constants.tx_power_dbm - path_loss_db - constants.rx_sensitivity_dbm;
    }
}
