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

#ifndef CHANSIM_ANALYSIS_HPP
#define CHANSIM_ANALYSIS_HPP

#include "chansim/model.hpp"
#include "chansim/sv_generator.hpp"
#include "chansim/waveform.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace chansim
{
    inline constexpr double kPdpFloorDb = -200.0;
    inline constexpr std::size_t kDefaultSmoothingSamples = 25;

    // Power delay profile on the sampling grid.
    struct Pdp
    {
        std::vector<double> mean_power;  // per-bin average power, linear, unnormalized
        std::vector<double> power_db;    // mean_power relative to its maximum, floored at kPdpFloorDb
        std::vector<double> smoothed_db; // centered moving average of the normalized power, same reference
        double peak_power = 0.0;
        double sample_step_ns = 0.0;
        std::size_t smoothing_samples = kDefaultSmoothingSamples;
        std::size_t n_records = 0;
    };

    struct ClusterEstimate
    {
        double start_ns = 0.0;
        double peak_ns = 0.0;
        double end_ns = 0.0;
        double peak_db = 0.0;
        std::vector<std::size_t> member_mpc_indices;
    };

    struct ParamEstimate
    {
        double n_clusters_hat = 0.0;
        double chi_hat = 0.0;
        double eta_hat = 0.0;
        double varsigma_hat = 0.0;
        double gamma_hat = 0.0;
        std::size_t n_realizations = 0;
        DecayInterpretation decay_mode = DecayInterpretation::RateAsWritten;
        // Mean span over which a cluster arrival would have been observable
        // (scan window limited by the dynamic range); chi_hat = (n_clusters_hat - 1) / effective_window_ns.
        double effective_window_ns = 0.0;
        std::size_t cluster_arrivals = 0; // observed clusters after the first, summed over the ensemble
        std::size_t ray_arrivals = 0;     // observed rays after the first, summed over all clusters
    };

    // ----- CLEAN -------------------------------------------------------------

    // Iterative peak-find-and-subtract deconvolution. At every candidate sample the
    // residual is projected onto the in-phase/quadrature template pair; the
    // strongest projection is recorded as a tap (amplitude and carrier phase) and
    // subtracted. Stops once the strongest remaining projection falls below
    // stop_frac times the first one. Taps are returned sorted by delay with
    // cluster_index 0 and ray_index in delay order.
    std::vector<Tap> clean_deconvolve(const WaveformRecord &rx, const PulseTemplate &pulse, double stop_frac = 0.2,
                                      std::size_t max_taps = 4096);

    // ----- PDP ---------------------------------------------------------------

    Pdp compute_pdp(std::span<const ChannelRealization> realizations, const SamplingGrid &grid = {},
                    std::size_t smoothing_samples = kDefaultSmoothingSamples);
    Pdp compute_pdp(std::span<const WaveformRecord> waveforms, std::size_t smoothing_samples = kDefaultSmoothingSamples);

    // Builds a PDP directly from a per-bin linear power profile.
    Pdp make_pdp(std::vector<double> mean_power, double sample_step_ns, std::size_t n_records,
                 std::size_t smoothing_samples = kDefaultSmoothingSamples);

    // ----- MPC statistics ----------------------------------------------------

    std::size_t count_significant_mpcs(std::span<const Tap> taps, double threshold_frac = 0.2);
    double average_significant_mpcs(std::span<const ChannelRealization> realizations, double threshold_frac = 0.2);

    // Clusters on pdp.smoothed_db. A cluster opens when the power climbs at least
    // rise_fall_db above the lowest point since the previous cluster (the start of
    // the profile counts as silence), its peak is the highest point before the
    // power has dropped rise_fall_db below it, and it closes at the first local
    // minimum reached after that drop (or the end of the profile). It is kept if
    // the peak-to-close span is at least min_peak_to_fall_ns.
    std::vector<ClusterEstimate> identify_clusters(const Pdp &pdp, double rise_fall_db = 10.0,
                                                   double min_peak_to_fall_ns = 2.0);

    // Assigns cluster_index by the cluster windows (taps before the first window join
    // cluster 0, taps between windows join the preceding one) and renumbers ray_index.
    void label_clusters(std::vector<Tap> &taps, std::span<const ClusterEstimate> clusters);

    // ----- Parameter estimation ---------------------------------------------

    // Inverts the generator using the cluster/ray labels in the taps.
    //   decay constants: least squares of log tap power against (T_l, tau) with
    //     one intercept per realization, in the chosen interpretation;
    //   arrival rates: observed arrivals divided by the total span over which an
    //     arrival would have been observed, given the scan window and the
    //     realization's dynamic-range floor (censored exponential MLE);
    //   n_clusters_hat: mean number of observed clusters per realization.
    // Throws Error(InsufficientData) when the ensemble holds no realization with two
    // clusters or no cluster with two rays, or the regression is singular.
    ParamEstimate estimate_params(std::span<const ChannelRealization> ensemble,
                                  DecayInterpretation decay_mode = DecayInterpretation::RateAsWritten);
}

#endif
