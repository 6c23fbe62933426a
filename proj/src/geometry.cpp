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

#include "chansim/geometry.hpp"
#include "chansim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace chansim
{
    namespace
    {
        constexpr double kDegToRad = std::numbers::pi / 180.0;
        constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    }

    double elevation_angle(double x_m, double h_m)
    {
        if (!(x_m > 0.0) || !(h_m >= 0.0) || !std::isfinite(x_m) || !std::isfinite(h_m))
        {
            std::ostringstream os;
            os << "need x > 0 and h >= 0, got x=" << x_m << " h=" << h_m;
            throw Error(ErrorCode::InvalidGeometry, os.str());
        }
        return 90.0 - std::atan(h_m / x_m) * kRadToDeg;
    }

    LinkGeometry make_geometry(double x_m, double h_m)
    {
        LinkGeometry g;
        g.theta_deg = elevation_angle(x_m, h_m);
        g.x_m = x_m;
        g.h_m = h_m;
        g.d_m = std::hypot(x_m, h_m);
        return g;
    }

    LinkGeometry make_geometry(const LinkConfig &link)
    {
        if (!(link.uav_height_m > 0.0))
            throw Error(ErrorCode::InvalidGeometry, "UAV height must be positive");
        return make_geometry(link.horizontal_distance_m, link.uav_height_m - receiver_height_m(link.receiver));
    }

    ElevationPattern ElevationPattern::tabulated(std::vector<double> angles_deg, std::vector<double> gains)
    {
        if (angles_deg.size() != gains.size() || angles_deg.size() < 2)
            throw Error(ErrorCode::InvalidConfig, "tabulated pattern needs at least two (angle, gain) pairs");

        std::vector<std::size_t> order(angles_deg.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                  { return angles_deg[a] < angles_deg[b]; });

        ElevationPattern p;
        p.angles_.reserve(order.size());
        p.gains_.reserve(order.size());
        for (std::size_t i : order)
        {
            if (gains[i] < 0.0 || !std::isfinite(gains[i]))
                throw Error(ErrorCode::InvalidConfig, "pattern gains must be finite and non-negative");
            p.angles_.push_back(angles_deg[i]);
            p.gains_.push_back(gains[i]);
        }
        const double peak = *std::max_element(p.gains_.begin(), p.gains_.end());
        if (!(peak > 0.0))
            throw Error(ErrorCode::InvalidConfig, "pattern has no positive gain");
        for (double &g : p.gains_)
            g /= peak;
        return p;
    }

    ElevationPattern ElevationPattern::load_csv(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot open pattern file " + file.string());

        std::vector<double> angles, gains;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty() || line[0] == '#')
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            double a = 0.0, g = 0.0;
            if (!(fields >> a >> g))
            {
                if (line_no == 1)
                    continue; // header
                throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(line_no) + ": expected angle_deg,gain_linear");
            }
            angles.push_back(a);
            gains.push_back(g);
        }
        return tabulated(std::move(angles), std::move(gains));
    }

    double ElevationPattern::gain(double theta_deg) const
    {
        if (angles_.empty())
            return std::abs(std::sin(theta_deg * kDegToRad));

        double t = std::fmod(theta_deg, 360.0);
        if (t < 0.0)
            t += 360.0;
        if (t <= angles_.front())
            return gains_.front();
        if (t >= angles_.back())
            return gains_.back();
        const auto hi = std::upper_bound(angles_.begin(), angles_.end(), t);
        const std::size_t j = static_cast<std::size_t>(hi - angles_.begin());
        const double w = (t - angles_[j - 1]) / (angles_[j] - angles_[j - 1]);
        return gains_[j - 1] + w * (gains_[j] - gains_[j - 1]);
    }

    double los_gain(double theta_deg, Orientation orientation, double xpd_db, const ElevationPattern &pattern)
    {
        const double g = pattern.gain(theta_deg);
        const double combined = std::sqrt(g * g);
        return combined * std::pow(10.0, -polarization_power_loss(orientation, xpd_db) / 20.0);
    }

    double polarization_power_loss(Orientation orientation, double xpd_db)
    {
        return orientation == Orientation::VV ? 0.0 : xpd_db;
    }
}
