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

#include "chansim/waveform.hpp"
#include "chansim/error.hpp"
#include "chansim/kernels.hpp"
#include "chansim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace chansim
{
    std::size_t SamplingGrid::n_samples() const noexcept
    {
        return static_cast<std::size_t>(std::floor(window_ns * 1000.0 / sample_step_ps()));
    }

    std::size_t SamplingGrid::nearest_index(double delay_ns) const noexcept
    {
        return static_cast<std::size_t>(std::llround(delay_ns / sample_step_ns()));
    }

    PulseTemplate template_pulse(const SamplingGrid &grid, double center_freq_hz, double duration_ns)
    {
        if (!(duration_ns > 0.0))
            throw Error(ErrorCode::InvalidConfig, "pulse duration must be positive");

        PulseTemplate p;
        p.sample_step_ns = grid.sample_step_ns();
        p.center_freq_hz = center_freq_hz;
        p.duration_ns = duration_ns;
        // exp(-t^2 / (2 sigma^2)) = 0.1 at t = duration / 2
        p.sigma_ns = 0.5 * duration_ns / std::sqrt(2.0 * std::log(10.0));

        // Support of +/- one pulse duration: the envelope is below -80 dB there.
        const auto half = static_cast<std::size_t>(std::ceil(duration_ns / p.sample_step_ns));
        p.center = half;
        p.in_phase.resize(2 * half + 1);
        p.quadrature.resize(2 * half + 1);
        const double omega = 2.0 * std::numbers::pi * center_freq_hz * 1e-9; // rad/ns
        for (std::size_t k = 0; k < p.in_phase.size(); ++k)
        {
            const double t = (static_cast<double>(k) - static_cast<double>(half)) * p.sample_step_ns;
            const double envelope = std::exp(-t * t / (2.0 * p.sigma_ns * p.sigma_ns));
            p.in_phase[k] = envelope * std::cos(omega * t);
            p.quadrature[k] = envelope * std::sin(omega * t);
        }
        p.quadrature[half] = 0.0;
        return p;
    }

    WaveformRecord render(std::span<const Tap> taps, const PulseTemplate &pulse, const SamplingGrid &grid,
                          std::optional<double> snr_db, std::uint64_t noise_seed)
    {
        WaveformRecord out;
        out.grid = grid;
        const std::size_t n = grid.n_samples();
        out.samples.assign(n, 0.0);

        const auto half = static_cast<std::ptrdiff_t>(pulse.half_width());
        const auto len = static_cast<std::ptrdiff_t>(pulse.size());
        const auto total = static_cast<std::ptrdiff_t>(n);

        for (const Tap &tap : taps)
        {
            if (!(tap.delay_ns >= 0.0) || !(tap.delay_ns < grid.window_ns))
            {
                std::ostringstream os;
                os << "tap delay " << tap.delay_ns << " ns outside [0, " << grid.window_ns << ") ns";
                throw Error(ErrorCode::DelayOutOfWindow, os.str());
            }
            const auto center = static_cast<std::ptrdiff_t>(grid.nearest_index(tap.delay_ns));
            // Template index k lands on sample center - half + k; keep the part inside [0, n).
            const std::ptrdiff_t k0 = std::max<std::ptrdiff_t>(0, half - center);
            const std::ptrdiff_t k1 = std::min<std::ptrdiff_t>(len, total - center + half);
            if (k1 <= k0)
                continue;
            const auto count = static_cast<std::size_t>(k1 - k0);
            const std::span<double> dst(out.samples.data() + (center - half + k0), count);
            const double ci = tap.amplitude * std::cos(tap.phase_rad);
            const double cq = -tap.amplitude * std::sin(tap.phase_rad);
            kernels::axpy(ci, std::span<const double>(pulse.in_phase.data() + k0, count), dst);
            if (cq != 0.0)
                kernels::axpy(cq, std::span<const double>(pulse.quadrature.data() + k0, count), dst);
        }

        if (snr_db)
        {
            double peak = 0.0;
            for (double v : out.samples)
                peak = std::max(peak, std::abs(v));
            const double sigma = peak / std::pow(10.0, *snr_db / 20.0);
            Rng rng(noise_seed);
            for (double &v : out.samples)
                v += sigma * rng.normal();
        }
        return out;
    }

    WaveformRecord render(const ChannelRealization &realization, const PulseTemplate &pulse, const SamplingGrid &grid,
                          std::optional<double> snr_db, std::uint64_t noise_seed)
    {
        return render(std::span<const Tap>(realization.taps), pulse, grid, snr_db, noise_seed);
    }

    double energy(const WaveformRecord &w)
    {
        return kernels::sum_squares(w.samples);
    }
}
