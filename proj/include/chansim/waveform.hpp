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

#ifndef CHANSIM_WAVEFORM_HPP
#define CHANSIM_WAVEFORM_HPP

#include "chansim/model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace chansim
{
    // Receiver sampling grid: a 1.9073 ps delay bin, one retained sample every 32 bins.
    struct SamplingGrid
    {
        double bin_ps = 1.9073;
        int decimation = 32;
        double window_ns = 100.0;

        double sample_step_ps() const noexcept { return bin_ps * decimation; }
        double sample_step_ns() const noexcept { return sample_step_ps() * 1e-3; }

        // floor(window / step): the last sample never lies beyond the scan window.
        std::size_t n_samples() const noexcept;

        double time_ns(std::size_t index) const noexcept { return static_cast<double>(index) * sample_step_ns(); }

        // Nearest sample index of a delay (may equal n_samples() for delays in the last half step).
        std::size_t nearest_index(double delay_ns) const noexcept;

        friend bool operator==(const SamplingGrid &, const SamplingGrid &) = default;
    };

    struct WaveformRecord
    {
        std::vector<double> samples;
        SamplingGrid grid;
    };

    // Gaussian-envelope carrier pulse sampled on the grid step. `in_phase` is the
    // transmitted template (cosine carrier, unit peak at `center`); `quadrature`
    // is the same envelope on a sine carrier and is used to resolve carrier phase.
    struct PulseTemplate
    {
        std::vector<double> in_phase;
        std::vector<double> quadrature;
        std::size_t center = 0;
        double sample_step_ns = 0.0;
        double center_freq_hz = 0.0;
        double duration_ns = 0.0; // separation of the -20 dB envelope points
        double sigma_ns = 0.0;    // Gaussian envelope standard deviation

        std::size_t half_width() const noexcept { return center; }
        std::size_t size() const noexcept { return in_phase.size(); }
    };

    PulseTemplate template_pulse(const SamplingGrid &grid = {}, double center_freq_hz = 4.3e9, double duration_ns = 1.0);

    // Superposes one template per tap at the nearest sample; the tap phase is applied
    // as a carrier phase offset: a (cos(phi) I - sin(phi) Q). With snr_db set, white
    // Gaussian noise is added whose variance is the peak sample power / 10^(snr_db / 10).
    // Throws Error(DelayOutOfWindow) for taps outside [0, grid.window_ns).
    WaveformRecord render(const ChannelRealization &realization, const PulseTemplate &pulse,
                          const SamplingGrid &grid = {}, std::optional<double> snr_db = std::nullopt,
                          std::uint64_t noise_seed = 0);

    WaveformRecord render(std::span<const Tap> taps, const PulseTemplate &pulse, const SamplingGrid &grid = {},
                          std::optional<double> snr_db = std::nullopt, std::uint64_t noise_seed = 0);

    double energy(const WaveformRecord &w);
}

#endif
