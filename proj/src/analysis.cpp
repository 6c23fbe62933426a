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

#include "chansim/analysis.hpp"
#include "chansim/error.hpp"
#include "chansim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace chansim
{
    // ====================================================================
    // CLEAN
    // ====================================================================

    namespace
    {
        struct Projection
        {
            double in_phase = 0.0;   // coefficient of the cosine template
            double quadrature = 0.0; // coefficient of the sine template
            double amplitude = 0.0;
            double energy = 0.0; // residual energy removed by the fit
        };

        // Least-squares fit of (u I + v Q) to the residual at one position, using
        // only the template samples that fall inside the record.
        class Projector
        {
        public:
            Projector(const PulseTemplate &pulse, std::size_t n) : pulse_(pulse), n_(n), gram_(n)
            {
                for (std::size_t p = 0; p < n_; ++p)
                {
                    const auto [k0, k1] = overlap(p);
                    const std::span<const double> I(pulse_.in_phase.data() + k0, k1 - k0);
                    const std::span<const double> Q(pulse_.quadrature.data() + k0, k1 - k0);
                    gram_[p] = {kernels::dot(I, I), kernels::dot(I, Q), kernels::dot(Q, Q)};
                }
            }

            // Template index range [k0, k1) that overlaps the record when centered at p.
            std::pair<std::size_t, std::size_t> overlap(std::size_t p) const noexcept
            {
                const std::size_t half = pulse_.half_width();
                const std::size_t k0 = p < half ? half - p : 0;
                const std::size_t k1 = std::min(pulse_.size(), n_ - p + half);
                return {k0, k1};
            }

            Projection project(std::span<const double> residual, std::size_t p) const noexcept
            {
                const auto [k0, k1] = overlap(p);
                const std::size_t count = k1 - k0;
                const std::span<const double> seg(residual.data() + (p + k0 - pulse_.half_width()), count);
                const double ci = kernels::dot(seg, std::span<const double>(pulse_.in_phase.data() + k0, count));
                const double cq = kernels::dot(seg, std::span<const double>(pulse_.quadrature.data() + k0, count));
                const Gram &g = gram_[p];

                Projection out;
                const double det = g.ii * g.qq - g.iq * g.iq;
                if (det > 1e-12 * g.ii * g.qq)
                {
                    out.in_phase = (g.qq * ci - g.iq * cq) / det;
                    out.quadrature = (g.ii * cq - g.iq * ci) / det;
                }
                else if (g.ii > 0.0)
                    out.in_phase = ci / g.ii;
                out.amplitude = std::hypot(out.in_phase, out.quadrature);
                out.energy = out.in_phase * ci + out.quadrature * cq;
                return out;
            }

            void subtract(std::span<double> residual, std::size_t p, const Projection &proj) const noexcept
            {
                const auto [k0, k1] = overlap(p);
                const std::size_t count = k1 - k0;
                const std::span<double> seg(residual.data() + (p + k0 - pulse_.half_width()), count);
                kernels::axpy(-proj.in_phase, std::span<const double>(pulse_.in_phase.data() + k0, count), seg);
                kernels::axpy(-proj.quadrature, std::span<const double>(pulse_.quadrature.data() + k0, count), seg);
            }

        private:
            struct Gram
            {
                double ii = 0.0, iq = 0.0, qq = 0.0;
            };

            const PulseTemplate &pulse_;
            std::size_t n_;
            std::vector<Gram> gram_;
        };
    }

    std::vector<Tap> clean_deconvolve(const WaveformRecord &rx, const PulseTemplate &pulse, double stop_frac,
                                      std::size_t max_taps)
    {
        if (pulse.in_phase.empty() || kernels::sum_squares(pulse.in_phase) <= 0.0)
            throw Error(ErrorCode::ZeroTemplate, "CLEAN template has no energy");

        std::vector<Tap> taps;
        const std::size_t n = rx.samples.size();
        if (n == 0)
            return taps;

        std::vector<double> residual = rx.samples;
        const Projector projector(pulse, n);
        std::vector<Projection> proj(n);
        for (std::size_t p = 0; p < n; ++p)
            proj[p] = projector.project(residual, p);

        // Peaks are ranked by explained energy: near the record edges a clipped
        // template can fit a large amplitude to a small leftover.
        const auto strongest = [&]
        {
            return static_cast<std::size_t>(std::max_element(proj.begin(), proj.end(), [](const Projection &a, const Projection &b)
                                                             { return a.energy < b.energy; }) -
                                            proj.begin());
        };

        const double initial = proj[strongest()].amplitude;
        if (!(initial > 0.0))
            return taps;
        const double stop_level = stop_frac * initial;
        const std::size_t reach = 2 * pulse.half_width();
        const double step_ns = rx.grid.sample_step_ns();

        while (taps.size() < max_taps)
        {
            const std::size_t p = strongest();
            const Projection hit = proj[p];
            if (hit.amplitude < stop_level)
                break;

            Tap tap;
            tap.delay_ns = static_cast<double>(p) * step_ns;
            tap.amplitude = hit.amplitude;
            double phase = std::atan2(-hit.quadrature, hit.in_phase);
            if (phase < 0.0)
                phase += 2.0 * std::numbers::pi;
            tap.phase_rad = phase >= 2.0 * std::numbers::pi ? 0.0 : phase;
            taps.push_back(tap);

            projector.subtract(residual, p, hit);
            const std::size_t lo = p > reach ? p - reach : 0;
            const std::size_t hi = std::min(n, p + reach + 1);
            for (std::size_t q = lo; q < hi; ++q)
                proj[q] = projector.project(residual, q);
        }

        std::sort(taps.begin(), taps.end(), [](const Tap &a, const Tap &b)
                  { return a.delay_ns < b.delay_ns; });
        for (std::size_t i = 0; i < taps.size(); ++i)
            taps[i].ray_index = static_cast<int>(i);
        return taps;
    }

    // ====================================================================
    // PDP
    // ====================================================================

    Pdp make_pdp(std::vector<double> mean_power, double sample_step_ns, std::size_t n_records, std::size_t smoothing_samples)
    {
        if (mean_power.empty())
            throw Error(ErrorCode::EmptyInput, "power profile is empty");
        if (smoothing_samples == 0)
            smoothing_samples = 1;

        Pdp pdp;
        pdp.sample_step_ns = sample_step_ns;
        pdp.n_records = n_records;
        pdp.smoothing_samples = smoothing_samples;
        pdp.peak_power = *std::max_element(mean_power.begin(), mean_power.end());
        pdp.mean_power = std::move(mean_power);

        const std::size_t n = pdp.mean_power.size();
        const double peak = pdp.peak_power;
        const auto to_db = [peak](double v)
        {
            if (!(v > 0.0) || !(peak > 0.0))
                return kPdpFloorDb;
            return std::max(kPdpFloorDb, 10.0 * std::log10(v / peak));
        };

        pdp.power_db.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            pdp.power_db[i] = to_db(pdp.mean_power[i]);

        // Centered box filter over the linear power, zero-padded at the ends so an
        // impulse always spreads into a plateau of smoothing_samples bins.
        const std::size_t left = (smoothing_samples - 1) / 2;
        const std::size_t right = smoothing_samples - 1 - left;
        pdp.smoothed_db.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t a = i >= left ? i - left : 0;
            const std::size_t b = std::min(n - 1, i + right);
            double s = 0.0;
            for (std::size_t j = a; j <= b; ++j)
                s += pdp.mean_power[j];
            pdp.smoothed_db[i] = to_db(s / static_cast<double>(smoothing_samples));
        }
        return pdp;
    }

    Pdp compute_pdp(std::span<const ChannelRealization> realizations, const SamplingGrid &grid, std::size_t smoothing_samples)
    {
        if (realizations.empty())
            throw Error(ErrorCode::EmptyInput, "PDP needs at least one realization");
        const std::size_t n = grid.n_samples();
        std::vector<double> acc(n, 0.0);
        for (const ChannelRealization &r : realizations)
            for (const Tap &tap : r.taps)
                acc[std::min(n - 1, grid.nearest_index(tap.delay_ns))] += tap.amplitude * tap.amplitude;
        kernels::scale(1.0 / static_cast<double>(realizations.size()), acc);
        return make_pdp(std::move(acc), grid.sample_step_ns(), realizations.size(), smoothing_samples);
    }

    Pdp compute_pdp(std::span<const WaveformRecord> waveforms, std::size_t smoothing_samples)
    {
        if (waveforms.empty())
            throw Error(ErrorCode::EmptyInput, "PDP needs at least one waveform");
        const std::size_t n = waveforms.front().samples.size();
        std::vector<double> acc(n, 0.0);
        for (const WaveformRecord &w : waveforms)
        {
            if (w.samples.size() != n)
                throw Error(ErrorCode::InvalidConfig, "waveforms in a PDP must share one grid");
            kernels::accumulate_squares(w.samples, acc);
        }
        kernels::scale(1.0 / static_cast<double>(waveforms.size()), acc);
        return make_pdp(std::move(acc), waveforms.front().grid.sample_step_ns(), waveforms.size(), smoothing_samples);
    }

    // ====================================================================
    // MPC statistics and clusters
    // ====================================================================

    std::size_t count_significant_mpcs(std::span<const Tap> taps, double threshold_frac)
    {
        if (taps.empty())
            throw Error(ErrorCode::EmptyInput, "no taps to count");
        double peak = 0.0;
        for (const Tap &t : taps)
            peak = std::max(peak, t.amplitude);
        const double level = threshold_frac * peak;
        return static_cast<std::size_t>(std::count_if(taps.begin(), taps.end(), [level](const Tap &t)
                                                      { return t.amplitude >= level; }));
    }

    double average_significant_mpcs(std::span<const ChannelRealization> realizations, double threshold_frac)
    {
        if (realizations.empty())
            throw Error(ErrorCode::EmptyInput, "no realizations to average");
        double total = 0.0;
        for (const ChannelRealization &r : realizations)
            total += static_cast<double>(count_significant_mpcs(r.taps, threshold_frac));
        return total / static_cast<double>(realizations.size());
    }

    std::vector<ClusterEstimate> identify_clusters(const Pdp &pdp, double rise_fall_db, double min_peak_to_fall_ns)
    {
        std::vector<ClusterEstimate> out;
        const std::vector<double> &v = pdp.smoothed_db;
        const std::size_t n = v.size();
        if (n == 0)
            return out;
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        if (*lo == *hi)
            return out;

        const double dt = pdp.sample_step_ns;
        // Half a sample of slack absorbs rounding in (end - peak) * dt.
        const double min_span = min_peak_to_fall_ns - 0.5 * dt;

        double ref = -std::numeric_limits<double>::infinity();
        std::size_t ref_idx = 0;
        std::size_t i = 0;
        while (i < n)
        {
            if (v[i] <= ref)
            {
                ref = v[i];
                ref_idx = i;
                ++i;
                continue;
            }
            if (v[i] - ref < rise_fall_db)
            {
                ++i;
                continue;
            }

            std::size_t peak = i;
            std::size_t end = n - 1;
            for (std::size_t j = i; j < n; ++j)
            {
                if (v[j] > v[peak])
                    peak = j;
                else if (v[peak] - v[j] >= rise_fall_db && (j + 1 == n || v[j + 1] >= v[j]))
                {
                    end = j;
                    break;
                }
            }

            if (static_cast<double>(end - peak) * dt >= min_span)
            {
                ClusterEstimate c;
                c.start_ns = static_cast<double>(ref_idx) * dt;
                c.peak_ns = static_cast<double>(peak) * dt;
                c.end_ns = static_cast<double>(end) * dt;
                c.peak_db = v[peak];
                out.push_back(std::move(c));
            }
            ref = v[end];
            ref_idx = end;
            i = end + 1;
        }
        return out;
    }

    void label_clusters(std::vector<Tap> &taps, std::span<const ClusterEstimate> clusters)
    {
        std::sort(taps.begin(), taps.end(), [](const Tap &a, const Tap &b)
                  { return a.delay_ns < b.delay_ns; });
        int current = 0;
        int ray = 0;
        std::size_t next = 1;
        for (Tap &t : taps)
        {
            while (next < clusters.size() && t.delay_ns >= clusters[next].start_ns)
            {
                ++current;
                ++next;
                ray = 0;
            }
            t.cluster_index = current;
            t.ray_index = ray++;
        }
    }

    // ====================================================================
    // Parameter estimation
    // ====================================================================

    namespace
    {
        struct ClusterObs
        {
            double start_ns = std::numeric_limits<double>::infinity();
            std::size_t later_rays = 0;
        };

        struct RealizationObs
        {
            std::map<int, ClusterObs> clusters;
            double mean_t = 0.0, mean_tau = 0.0, mean_y = 0.0;
            std::size_t points = 0;
            double log_max_power = -std::numeric_limits<double>::infinity();
        };

        bool is_los_tap(const ChannelRealization &r, const Tap &t) noexcept
        {
            return r.los_applied && t.cluster_index == 0 && t.ray_index == 0;
        }
    }

    ParamEstimate estimate_params(std::span<const ChannelRealization> ensemble, DecayInterpretation decay_mode)
    {
        if (ensemble.empty())
            throw Error(ErrorCode::InsufficientData, "empty ensemble");

        std::vector<RealizationObs> obs(ensemble.size());
        // Within-realization centered normal equations for the two decay slopes.
        double s_tt = 0.0, s_tu = 0.0, s_uu = 0.0, s_ty = 0.0, s_uy = 0.0;
        std::size_t total_points = 0;

        for (std::size_t r = 0; r < ensemble.size(); ++r)
        {
            const ChannelRealization &real = ensemble[r];
            RealizationObs &o = obs[r];
            for (const Tap &t : real.taps)
            {
                if (!(t.amplitude > 0.0))
                    continue;
                o.log_max_power = std::max(o.log_max_power, 2.0 * std::log(t.amplitude));
                ClusterObs &c = o.clusters[t.cluster_index];
                if (t.ray_index == 0 || t.delay_ns < c.start_ns)
                    c.start_ns = t.ray_index == 0 ? t.delay_ns : std::min(c.start_ns, t.delay_ns);
                if (t.ray_index > 0)
                    ++c.later_rays;
            }
            if (o.clusters.count(0))
                o.clusters[0].start_ns = 0.0;

            std::vector<std::array<double, 3>> pts;
            for (const Tap &t : real.taps)
            {
                if (!(t.amplitude > 0.0) || is_los_tap(real, t))
                    continue;
                const double start = o.clusters[t.cluster_index].start_ns;
                pts.push_back({start, std::max(0.0, t.delay_ns - start), 2.0 * std::log(t.amplitude)});
            }
            o.points = pts.size();
            if (pts.empty())
                continue;
            for (const auto &p : pts)
            {
                o.mean_t += p[0];
                o.mean_tau += p[1];
                o.mean_y += p[2];
            }
            const double k = static_cast<double>(pts.size());
            o.mean_t /= k;
            o.mean_tau /= k;
            o.mean_y /= k;
            for (const auto &p : pts)
            {
                const double dt = p[0] - o.mean_t, du = p[1] - o.mean_tau, dy = p[2] - o.mean_y;
                s_tt += dt * dt;
                s_tu += dt * du;
                s_uu += du * du;
                s_ty += dt * dy;
                s_uy += du * dy;
            }
            total_points += pts.size();
        }

        std::size_t cluster_arrivals = 0, ray_arrivals = 0;
        for (const RealizationObs &o : obs)
        {
            cluster_arrivals += o.clusters.empty() ? 0 : o.clusters.size() - 1;
            for (const auto &[idx, c] : o.clusters)
                ray_arrivals += c.later_rays;
        }
        if (cluster_arrivals == 0)
            throw Error(ErrorCode::InsufficientData, "no realization shows more than one cluster");
        if (ray_arrivals == 0)
            throw Error(ErrorCode::InsufficientData, "no cluster shows more than one ray");

        const double det = s_tt * s_uu - s_tu * s_tu;
        if (total_points < 3 || !(s_tt > 0.0) || !(s_uu > 0.0) || !(det > 1e-12 * s_tt * s_uu))
            throw Error(ErrorCode::InsufficientData, "decay regression is singular");

        // Slopes of log power per ns of cluster delay and of ray offset (positive = decaying).
        const double k_cluster = -(s_uu * s_ty - s_tu * s_uy) / det;
        const double k_ray = -(s_tt * s_uy - s_tu * s_ty) / det;
        if (!(k_cluster > 0.0) || !(k_ray > 0.0))
            throw Error(ErrorCode::InsufficientData, "fitted power profile does not decay");

        // Per-realization log reference power; an ensemble average stands in where
        // a realization has no NLOS taps of its own.
        std::vector<double> intercept(obs.size(), 0.0);
        double intercept_sum = 0.0;
        std::size_t intercept_count = 0;
        for (std::size_t r = 0; r < obs.size(); ++r)
            if (obs[r].points > 0)
            {
                intercept[r] = obs[r].mean_y + k_cluster * obs[r].mean_t + k_ray * obs[r].mean_tau;
                intercept_sum += intercept[r];
                ++intercept_count;
            }
        const double intercept_fallback = intercept_sum / static_cast<double>(intercept_count);

        double cluster_exposure = 0.0, ray_exposure = 0.0, cluster_count_sum = 0.0;
        for (std::size_t r = 0; r < obs.size(); ++r)
        {
            const ChannelRealization &real = ensemble[r];
            const RealizationObs &o = obs[r];
            const double c = o.points > 0 ? intercept[r] : intercept_fallback;
            const double dr_nepers = real.dynamic_range_db * std::log(10.0) / 10.0;
            const double budget = std::isfinite(o.log_max_power) ? std::max(0.0, c + dr_nepers - o.log_max_power) : 0.0;
            const double window = real.window_ns;

            cluster_exposure += std::min(window, budget / k_cluster);
            cluster_count_sum += static_cast<double>(o.clusters.size());
            for (const auto &[idx, cl] : o.clusters)
            {
                const double room = std::min(window - cl.start_ns, (budget - k_cluster * cl.start_ns) / k_ray);
                ray_exposure += std::max(0.0, room);
            }
        }

        ParamEstimate est;
        est.n_realizations = ensemble.size();
        est.decay_mode = decay_mode;
        est.cluster_arrivals = cluster_arrivals;
        est.ray_arrivals = ray_arrivals;
        const double n = static_cast<double>(ensemble.size());
        est.n_clusters_hat = cluster_count_sum / n;
        est.effective_window_ns = cluster_exposure / n;
        est.chi_hat = static_cast<double>(cluster_arrivals) / cluster_exposure;
        est.varsigma_hat = static_cast<double>(ray_arrivals) / ray_exposure;
        if (decay_mode == DecayInterpretation::RateAsWritten)
        {
            est.eta_hat = k_cluster;
            est.gamma_hat = k_ray;
        }
        else
        {
            est.eta_hat = 1.0 / k_cluster;
            est.gamma_hat = 1.0 / k_ray;
        }
        return est;
    }
}
