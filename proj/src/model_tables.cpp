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

#include "chansim/model.hpp"
#include "chansim/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace chansim
{
    namespace
    {
        // Column order of the measurement campaign tables:
        // RX1 VV (15 m, 30 m), RX2 VV (15 m, 30 m), RX1 VH (15 m, 30 m), RX2 VH (15 m, 30 m)
        // Rows: N_C, chi, eta, varsigma, gamma
        struct PrintedTable
        {
            std::array<double, 8> n_clusters;
            std::array<double, 8> cluster_rate;
            std::array<double, 8> cluster_decay;
            std::array<double, 8> ray_rate;
            std::array<double, 8> ray_decay;
        };

        constexpr PrintedTable kHoveringOpen{
            {3.33, 4, 2.66, 2, 1.66, 2.66, 1.66, 1.33},
            {.033, .04, .027, .02, .017, .027, .017, .013},
            {.23, .186, .24, .16, .215, .16, .177, .171},
            {.1, .06, .11, .06, .25, .15, .26, .2},
            {8.7, 8.66, 5.5, 4.3, 2.7, 5.92, 2.8, 1.88}};

        constexpr PrintedTable kHoveringFoliage{
            {2, 2, 2, 1.66, 2, 1.33, 1.66, 1.33},
            {.02, .02, .02, .017, .02, .013, .017, .013},
            {.212, .21, .24, .23, .214, .16, .198, .2},
            {.14, .175, .27, .21, .34, .34, .3, .34},
            {1.3, 1.11, .985, 1.34, .77, .811, 1.4, .74}};

        constexpr PrintedTable kMovingCircle{
            {2, 1.66, 1.66, 1.33, 2, 1, 1.66, 1},
            {.02, .017, .017, .013, .02, .01, .017, .01},
            {.14, .143, .2, .18, .15, .12, .205, .171},
            {.1, .082, .084, .084, .14, .11, .16, .16},
            {1.87, 1.87, 3.6, 5.2, 1.76, 2, 2.04, 1.31}};

        const PrintedTable &table_for(Scenario s) noexcept
        {
            switch (s)
            {
            case Scenario::HoveringOpen:
                return kHoveringOpen;
            case Scenario::HoveringFoliage:
                return kHoveringFoliage;
            case Scenario::MovingCircle:
                break;
            }
            return kMovingCircle;
        }

        std::size_t column_index(Receiver rx, Orientation o, std::size_t distance_slot) noexcept
        {
            std::size_t group = (o == Orientation::VV ? 0 : 2) + (rx == Receiver::RX1 ? 0 : 1);
            return group * 2 + distance_slot;
        }

        std::optional<std::size_t> distance_slot(double x_m) noexcept
        {
            for (std::size_t i = 0; i < kTableDistances_m.size(); ++i)
                if (x_m == kTableDistances_m[i])
                    return i;
            return std::nullopt;
        }

        std::string lower(std::string_view text)
        {
            std::string out(text);
            std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c)
                           { return static_cast<char>(std::tolower(c)); });
            return out;
        }

        std::string describe(const TableCell &c)
        {
            std::ostringstream os;
            os << to_string(c.scenario) << '/' << to_string(c.receiver) << '/' << to_string(c.orientation)
               << "/x=" << c.horizontal_distance_m;
            return os.str();
        }
    }

    std::string_view to_string(Scenario s) noexcept
    {
        switch (s)
        {
        case Scenario::HoveringOpen:
            return "hovering-open";
        case Scenario::HoveringFoliage:
            return "hovering-foliage";
        case Scenario::MovingCircle:
            break;
        }
        return "moving-circle";
    }

    std::string_view to_string(Receiver r) noexcept { return r == Receiver::RX1 ? "RX1" : "RX2"; }
    std::string_view to_string(Orientation o) noexcept { return o == Orientation::VV ? "VV" : "VH"; }

    std::optional<Scenario> parse_scenario(std::string_view text)
    {
        const std::string t = lower(text);
        for (Scenario s : kAllScenarios)
            if (t == to_string(s))
                return s;
        return std::nullopt;
    }

    std::optional<Receiver> parse_receiver(std::string_view text)
    {
        const std::string t = lower(text);
        if (t == "rx1")
            return Receiver::RX1;
        if (t == "rx2")
            return Receiver::RX2;
        return std::nullopt;
    }

    std::optional<Orientation> parse_orientation(std::string_view text)
    {
        const std::string t = lower(text);
        if (t == "vv")
            return Orientation::VV;
        if (t == "vh")
            return Orientation::VH;
        return std::nullopt;
    }

    ScenarioParams lookup_params(Scenario scenario, Receiver receiver, Orientation orientation, double horizontal_distance_m)
    {
        const auto slot = distance_slot(horizontal_distance_m);
        if (!slot)
        {
            std::ostringstream os;
            os << "no table cell for horizontal distance " << horizontal_distance_m
               << " m; valid distances are 15 and 30 m";
            throw Error(ErrorCode::UnknownCell, os.str());
        }
        const PrintedTable &t = table_for(scenario);
        const std::size_t c = column_index(receiver, orientation, *slot);
        return ScenarioParams{t.n_clusters[c], t.cluster_rate[c], t.cluster_decay[c], t.ray_rate[c], t.ray_decay[c]};
    }

    std::vector<TableCell> all_cells()
    {
        std::vector<TableCell> cells;
        cells.reserve(24);
        for (Scenario s : kAllScenarios)
            for (Orientation o : kAllOrientations)
                for (Receiver r : kAllReceivers)
                    for (double x : kTableDistances_m)
                        cells.push_back(TableCell{s, r, o, x, lookup_params(s, r, o, x)});
        return cells;
    }

    std::vector<TableViolation> validate_cells(std::span<const TableCell> cells)
    {
        std::vector<TableViolation> out;
        for (const TableCell &c : cells)
        {
            const ScenarioParams &p = c.params;
            if (!(p.n_clusters_mean > 0 && p.cluster_rate > 0 && p.cluster_decay > 0 && p.ray_rate > 0 && p.ray_decay > 0))
            {
                out.push_back({c, describe(c) + ": all parameters must be strictly positive"});
                continue;
            }
            const double mismatch = std::abs(p.cluster_rate - p.n_clusters_mean / 100.0);
            if (mismatch > kRateIdentityTolerance)
            {
                std::ostringstream os;
                os << describe(c) << ": cluster_rate " << p.cluster_rate << " differs from n_clusters_mean/100 = "
                   << p.n_clusters_mean / 100.0 << " by " << mismatch;
                out.push_back({c, os.str()});
            }
        }
        return out;
    }

    std::vector<TableViolation> validate_tables()
    {
        const auto cells = all_cells();
        return validate_cells(cells);
    }
}
