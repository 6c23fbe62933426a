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

#include "chansim/rng.hpp"
#include "chansim/waveform.hpp"
#include "test_support.hpp"

#include <complex>
#include <numbers>

using namespace chansim;
using Catch::Approx;
using chansim::test::thrown_code;

namespace
{
    const SamplingGrid kGrid{};
    const PulseTemplate kPulse = template_pulse(kGrid);

    std::size_t peak_index(const std::vector<double> &x, std::size_t lo, std::size_t hi)
    {
        std::size_t best = lo;
        for (std::size_t i = lo; i < hi; ++i)
            if (std::abs(x[i]) > std::abs(x[best]))
                best = i;
        return best;
    }

    // Least-squares amplitude of (u I + v Q) at sample p, full template support.
    double projected_amplitude(const std::vector<double> &x, std::size_t p)
    {
        double ii = 0, iq = 0, qq = 0, xi = 0, xq = 0;
        for (std::size_t k = 0; k < kPulse.size(); ++k)
        {
            const double s = x[p - kPulse.center + k];
            ii += kPulse.in_phase[k] * kPulse.in_phase[k];
            iq += kPulse.in_phase[k] * kPulse.quadrature[k];
            qq += kPulse.quadrature[k] * kPulse.quadrature[k];
            xi += s * kPulse.in_phase[k];
            xq += s * kPulse.quadrature[k];
        }
        const double det = ii * qq - iq * iq;
        return std::hypot((qq * xi - iq * xq) / det, (ii * xq - iq * xi) / det);
    }

    std::vector<Tap> separated_taps(Rng &rng, std::size_t count, double first_ns, double gap_ns)
    {
        std::vector<Tap> taps;
        double t = first_ns;
        for (std::size_t i = 0; i < count; ++i)
        {
            taps.push_back(Tap{t, 0.2 + 0.8 * rng.uniform(), rng.phase(), 0, static_cast<int>(i)});
            t += gap_ns + 3.0 * rng.uniform();
        }
        return taps;
    }
}

TEST_CASE("sampling grid constants", "[waveform]")
{
    CHECK(kGrid.sample_step_ps() == Approx(61.0336).margin(1e-9));
    CHECK(kGrid.n_samples() == 1638);
    CHECK(static_cast<double>(kGrid.n_samples()) * kGrid.sample_step_ps() <= kGrid.window_ns * 1000);
    CHECK(static_cast<double>(kGrid.n_samples() + 1) * kGrid.sample_step_ps() > kGrid.window_ns * 1000);
    CHECK(kGrid.time_ns(10) == Approx(0.610336));
    CHECK(kGrid.nearest_index(0.61) == 10);
    CHECK(kGrid.nearest_index(0.0) == 0);

    const SamplingGrid short_grid{.window_ns = 10};
    CHECK(short_grid.n_samples() == 163);
}

TEST_CASE("template pulse shape", "[waveform]")
{
    REQUIRE(kPulse.size() == 2 * kPulse.center + 1);
    CHECK(kPulse.in_phase[kPulse.center] == 1.0);
    for (double v : kPulse.in_phase)
        CHECK(std::abs(v) <= 1.0);
    for (std::size_t k = 0; k < kPulse.center; ++k)
    {
        CHECK(kPulse.in_phase[k] == Approx(kPulse.in_phase[kPulse.size() - 1 - k]).margin(1e-15));
        CHECK(kPulse.quadrature[k] == Approx(-kPulse.quadrature[kPulse.size() - 1 - k]).margin(1e-15));
    }

    // Envelope -20 dB points
    double first = 0, last = 0;
    bool seen = false;
    for (std::size_t k = 0; k < kPulse.size(); ++k)
    {
        const double env = std::hypot(kPulse.in_phase[k], kPulse.quadrature[k]);
        const double t = (static_cast<double>(k) - static_cast<double>(kPulse.center)) * kPulse.sample_step_ns;
        if (env >= 0.1)
        {
            if (!seen)
                first = t;
            seen = true;
            last = t;
        }
    }
    CHECK(std::abs((last - first) - 1.0) <= kPulse.sample_step_ns);
    CHECK(kPulse.sigma_ns == Approx(0.5 / std::sqrt(2 * std::log(10.0))));

    CHECK(thrown_code([]
                      { template_pulse(kGrid, 4.3e9, 0.0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("template spectrum", "[waveform]")
{
    // Direct DFT of the sampled template on a 5 MHz frequency grid.
    const auto spectrum = [](double f_hz)
    {
        std::complex<double> s = 0;
        for (std::size_t k = 0; k < kPulse.size(); ++k)
        {
            const double t = (static_cast<double>(k) - static_cast<double>(kPulse.center)) * kPulse.sample_step_ns * 1e-9;
            s += kPulse.in_phase[k] * std::polar(1.0, -2 * std::numbers::pi * f_hz * t);
        }
        return std::norm(s);
    };
    double best_f = 0, best = 0;
    std::vector<std::pair<double, double>> curve;
    for (double f = 0; f <= 8.0e9; f += 5e6)
    {
        const double p = spectrum(f);
        curve.push_back({f, p});
        if (p > best)
        {
            best = p;
            best_f = f;
        }
    }
    CHECK(std::abs(best_f - 4.3e9) <= 20e6);

    double lo = 0, hi = 0;
    for (const auto &[f, p] : curve)
        if (p >= 0.1 * best)
        {
            if (lo == 0)
                lo = f;
            hi = f;
        }
    // Gaussian envelope: the -10 dB half-width is sqrt(ln 10) / (2 pi sigma).
    const double half = std::sqrt(std::log(10.0)) / (2 * std::numbers::pi * kPulse.sigma_ns * 1e-9);
    CHECK(lo == Approx(4.3e9 - half).epsilon(0.01));
    CHECK(hi == Approx(4.3e9 + half).epsilon(0.01));
    CHECK(lo >= 3.1e9);
}

TEST_CASE("single unit tap renders the template", "[waveform]")
{
    const std::vector<Tap> at_zero{Tap{0.0, 1.0, 0.0, 0, 0}};
    const auto w = render(at_zero, kPulse, kGrid);
    REQUIRE(w.samples.size() == kGrid.n_samples());
    for (std::size_t k = 0; k <= kPulse.center; ++k)
        CHECK(w.samples[k] == kPulse.in_phase[kPulse.center + k]);
    for (std::size_t k = kPulse.center + 1; k < w.samples.size(); ++k)
        CHECK(w.samples[k] == 0.0);

    const std::size_t p = 800;
    const std::vector<Tap> mid{Tap{kGrid.time_ns(p), 1.0, 0.0, 0, 0}};
    const auto m = render(mid, kPulse, kGrid);
    for (std::size_t k = 0; k < kPulse.size(); ++k)
        CHECK(m.samples[p - kPulse.center + k] == kPulse.in_phase[k]);
}

TEST_CASE("two equal taps render two equal pulses", "[waveform]")
{
    const std::vector<Tap> taps{Tap{20.0, 1.0, 0.0, 0, 0}, Tap{30.0, 1.0, 0.0, 0, 1}};
    const auto w = render(taps, kPulse, kGrid);
    const std::size_t a = kGrid.nearest_index(20.0), b = kGrid.nearest_index(30.0);
    const auto pa = peak_index(w.samples, a - 10, a + 10), pb = peak_index(w.samples, b - 10, b + 10);
    CHECK(pa == a);
    CHECK(pb == b);
    CHECK(w.samples[pa] / w.samples[pb] == Approx(1.0));
}

TEST_CASE("rendered energy of separated taps", "[waveform]")
{
    Rng rng(1);
    const double template_energy = [&]
    {
        double e = 0;
        for (double v : kPulse.in_phase)
            e += v * v;
        return e;
    }();
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto taps = separated_taps(rng, 8, 5.0, 3.0);
        double expected = 0;
        for (const Tap &t : taps)
            expected += t.amplitude * t.amplitude * template_energy;
        CHECK(energy(render(taps, kPulse, kGrid)) == Approx(expected).epsilon(0.01));
    }
}

TEST_CASE("taps outside the window are rejected", "[waveform]")
{
    CHECK(thrown_code([]
                      { render(std::vector<Tap>{Tap{100.0, 1, 0, 0, 0}}, kPulse, kGrid); }) == ErrorCode::DelayOutOfWindow);
    CHECK(thrown_code([]
                      { render(std::vector<Tap>{Tap{-0.1, 1, 0, 0, 0}}, kPulse, kGrid); }) == ErrorCode::DelayOutOfWindow);
    // Near the end of the window the pulse is clipped, not rejected.
    const auto w = render(std::vector<Tap>{Tap{99.99, 1, 0, 0, 0}}, kPulse, kGrid);
    CHECK(w.samples.back() != 0.0);
}

TEST_CASE("render is linear", "[waveform][property]")
{
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial)
    {
        auto taps = separated_taps(rng, 6, 2.0, 0.3);
        const double a = 0.01 + 10 * rng.uniform();
        const auto base = render(taps, kPulse, kGrid);
        for (Tap &t : taps)
            t.amplitude *= a;
        const auto scaled = render(taps, kPulse, kGrid);
        for (std::size_t k = 0; k < base.samples.size(); ++k)
            CHECK(scaled.samples[k] == Approx(a * base.samples[k]).margin(1e-12 * a));
    }
}

TEST_CASE("render is time-shift covariant", "[waveform][property]")
{
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial)
    {
        // Taps on grid samples so shifting by whole samples is exact.
        std::vector<Tap> taps;
        for (int i = 0; i < 5; ++i)
            taps.push_back(Tap{kGrid.time_ns(100 + static_cast<std::size_t>(rng.uniform() * 1000)), rng.uniform(), rng.phase(), 0, i});
        const std::size_t shift = 1 + static_cast<std::size_t>(rng.uniform() * 300);
        auto shifted = taps;
        for (Tap &t : shifted)
            t.delay_ns = kGrid.time_ns(kGrid.nearest_index(t.delay_ns) + shift);
        const auto a = render(taps, kPulse, kGrid), b = render(shifted, kPulse, kGrid);
        for (std::size_t k = 0; k + shift < a.samples.size(); ++k)
            CHECK(b.samples[k + shift] == Approx(a.samples[k]).margin(1e-14));
    }
}

TEST_CASE("per-tap amplitudes are recoverable from separated pulses", "[waveform][property]")
{
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto taps = separated_taps(rng, 7, 3.0, 1.2);
        const auto w = render(taps, kPulse, kGrid);
        for (const Tap &t : taps)
            CHECK(projected_amplitude(w.samples, kGrid.nearest_index(t.delay_ns)) == Approx(t.amplitude).epsilon(0.02));
    }
}

TEST_CASE("noise is seeded and scaled to the peak SNR", "[waveform]")
{
    const std::vector<Tap> taps{Tap{10.0, 1.0, 0.0, 0, 0}};
    const auto a = render(taps, kPulse, kGrid, 20.0, 5);
    const auto b = render(taps, kPulse, kGrid, 20.0, 5);
    const auto c = render(taps, kPulse, kGrid, 20.0, 6);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);

    // Samples far from the pulse are pure noise with sigma = peak / 10.
    double s2 = 0;
    std::size_t n = 0;
    for (std::size_t k = 400; k < a.samples.size(); ++k, ++n)
        s2 += a.samples[k] * a.samples[k];
    CHECK(std::sqrt(s2 / static_cast<double>(n)) == Approx(0.1).epsilon(0.08));
}
