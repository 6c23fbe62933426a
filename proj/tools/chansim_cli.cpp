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

// Command-line front end: generate, analyze, pathloss, roundtrip, tables.

#include "chansim/analysis.hpp"
#include "chansim/error.hpp"
#include "chansim/geometry.hpp"
#include "chansim/io.hpp"
#include "chansim/link_budget.hpp"
#include "chansim/parallel.hpp"
#include "chansim/pipeline.hpp"
#include "chansim/rng.hpp"
#include "chansim/waveform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chansim;

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitFail = 1;
    constexpr int kExitConfig = 2;
    constexpr int kExitIo = 3;
    constexpr int kExitInput = 4;

    constexpr std::uint64_t kNoiseStreamSalt = 0x6E6F697365ULL;

    int exit_code_for(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::IoError:
            return kExitIo;
        case ErrorCode::ParseError:
            return kExitInput;
        default:
            return kExitConfig;
        }
    }

    std::string fixed(double v, int digits = 6)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
        return buf;
    }

    json load_json_file(const fs::path &path)
    {
        const std::string text = io::read_file(path);
        try
        {
            return json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
        }
    }

    // --seed, then CHANSIM_DEFAULT_SEED, then a fresh one that is reported.
    std::uint64_t resolve_seed(const CLI::Option *seed_opt, std::uint64_t seed_flag, std::optional<std::uint64_t> from_file)
    {
        if (seed_opt->count() > 0)
            return seed_flag;
        if (from_file)
            return *from_file;
        if (const char *env = std::getenv("CHANSIM_DEFAULT_SEED"); env && *env)
        {
            std::uint64_t v = 0;
            const std::string_view s(env);
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw Error(ErrorCode::InvalidConfig, "CHANSIM_DEFAULT_SEED is not an unsigned integer: " + std::string(s));
            return v;
        }
        std::random_device rd;
        const std::uint64_t v = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::cerr << "chansim: no --seed given, using generated seed " << v << "\n";
        return v;
    }

    // Shared run-configuration flags for generate and pathloss.
    struct RunFlags
    {
        std::string scenario, receiver, orientation, decay_mode, fading;
        double x_m = 0.0, h_m = 0.0, xpd_db = 0.0, snr_db = 0.0, window_ns = 0.0, dynamic_range_db = 0.0;
        std::size_t n = 0;
        std::uint64_t seed = 0;
        bool no_los = false, los = false, waveforms = false;
        std::string params_file;

        CLI::Option *o_scenario, *o_rx, *o_orient, *o_decay, *o_fading, *o_x, *o_h, *o_xpd, *o_snr, *o_window, *o_dr,
            *o_n, *o_seed, *o_no_los, *o_los, *o_waveforms, *o_params;

        void add(CLI::App &app, bool with_x_h)
        {
            o_scenario = app.add_option("--scenario", scenario, "hovering-open | hovering-foliage | moving-circle");
            o_rx = app.add_option("--rx", receiver, "RX1 | RX2");
            o_orient = app.add_option("--orient", orientation, "VV | VH");
            o_decay = app.add_option("--decay-mode", decay_mode, "rate-as-written | time-constant");
            o_fading = app.add_option("--fading", fading, "deterministic | rayleigh");
            if (with_x_h)
            {
                o_x = app.add_option("--x", x_m, "horizontal distance [m]");
                o_h = app.add_option("--h", h_m, "UAV height [m]");
            }
            else
                o_x = o_h = nullptr;
            o_xpd = app.add_option("--xpd", xpd_db, "cross-polar discrimination [dB]");
            o_snr = app.add_option("--snr-db", snr_db, "add white noise at this peak SNR (waveforms only)");
            o_window = app.add_option("--window-ns", window_ns, "scan window [ns]");
            o_dr = app.add_option("--dynamic-range-db", dynamic_range_db, "tap truncation below the peak [dB]");
            o_n = app.add_option("--n", n, "number of realizations");
            o_seed = app.add_option("--seed", seed, "master seed");
            o_no_los = app.add_flag("--no-los", no_los, "suppress the line-of-sight tap");
            o_los = app.add_flag("--los", los, "force the line-of-sight tap on");
            o_los->excludes(o_no_los);
            o_waveforms = app.add_flag("--waveforms", waveforms, "also render sampled waveforms");
            o_params = app.add_option("--params-file", params_file, "JSON parameter override (free geometry)");
        }

        template <typename E>
        static E parse_or_throw(const std::string &text, std::optional<E> (*parse)(std::string_view), const char *what)
        {
            const auto v = parse(text);
            if (!v)
                throw Error(ErrorCode::InvalidConfig, std::string("invalid ") + what + " '" + text + "'");
            return *v;
        }

        void apply(RunConfig &c) const
        {
            if (o_scenario->count())
                c.scenario = parse_or_throw(scenario, parse_scenario, "--scenario");
            if (o_rx->count())
                c.receiver = parse_or_throw(receiver, parse_receiver, "--rx");
            if (o_orient->count())
                c.orientation = parse_or_throw(orientation, parse_orientation, "--orient");
            if (o_decay->count())
                c.decay_mode = parse_or_throw(decay_mode, parse_decay_interpretation, "--decay-mode");
            if (o_fading->count())
                c.amplitude_fading = parse_or_throw(fading, parse_amplitude_fading, "--fading");
            if (o_x && o_x->count())
                c.x_m = x_m;
            if (o_h && o_h->count())
                c.h_m = h_m;
            if (o_xpd->count())
                c.xpd_db = xpd_db;
            if (o_snr->count())
                c.snr_db = snr_db;
            if (o_window->count())
                c.window_ns = window_ns;
            if (o_dr->count())
                c.dynamic_range_db = dynamic_range_db;
            if (o_n->count())
                c.n_realizations = n;
            if (o_no_los->count())
                c.los = false;
            if (o_los->count())
                c.los = true;
            if (o_waveforms->count())
                c.waveforms = true;
            if (o_params->count())
            {
                try
                {
                    c.params = io::params_from_json(load_json_file(params_file));
                }
                catch (const json::exception &e)
                {
                    throw Error(ErrorCode::InvalidConfig, params_file + ": " + e.what());
                }
            }
        }
    };

    std::string numbered(const char *prefix, std::size_t i, std::size_t n, const char *ext)
    {
        const std::size_t width = std::max<std::size_t>(5, std::to_string(n > 0 ? n - 1 : 0).size());
        std::string digits = std::to_string(i);
        digits.insert(0, width - digits.size(), '0');
        return std::string(prefix) + digits + ext;
    }

    void ensure_directory(const fs::path &dir)
    {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
    }

    // ----- generate ----------------------------------------------------------

    struct GenerateCmd
    {
        RunFlags flags;
        std::string config_file, manifest_file, out_dir = "chansim_out";
        unsigned jobs = 1;

        void add(CLI::App &app)
        {
            flags.add(app, true);
            app.add_option("--config", config_file, "JSON run configuration (flags take precedence)");
            app.add_option("--from-manifest", manifest_file, "reproduce the run recorded in a manifest");
            app.add_option("--out", out_dir, "output directory")->capture_default_str();
            app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
        }

        int run() const
        {
            RunConfig config;
            std::optional<std::uint64_t> file_seed;
            if (!manifest_file.empty())
            {
                const json m = load_json_file(manifest_file);
                if (!m.contains("config"))
                    throw Error(ErrorCode::InvalidConfig, manifest_file + ": not a chansim manifest");
                config = run_config_from_json(m.at("config"), config);
                file_seed = config.seed;
            }
            if (!config_file.empty())
            {
                const json j = load_json_file(config_file);
                config = run_config_from_json(j, config);
                if (j.contains("seed"))
                    file_seed = config.seed;
            }
            flags.apply(config);
            config.seed = resolve_seed(flags.o_seed, flags.seed, file_seed);
            validate(config);

            const GeneratorConfig gen = generator_config(config);
            const auto ensemble = generate_ensemble(config, jobs);

            const fs::path dir(out_dir);
            ensure_directory(dir);
            const std::size_t n = ensemble.size();
            std::vector<std::string> cir_files(n), wf_files;
            parallel_for(n, jobs, [&](std::size_t i)
                         {
                cir_files[i] = numbered("cir_", i, n, ".csv");
                io::write_file_atomic(dir / cir_files[i], io::taps_to_csv(ensemble[i].taps)); });

            const SamplingGrid grid{.window_ns = config.window_ns};
            if (config.waveforms)
            {
                wf_files.resize(n);
                const PulseTemplate pulse = template_pulse(grid);
                parallel_for(n, jobs, [&](std::size_t i)
                             {
                    wf_files[i] = numbered("wf_", i, n, ".csv");
                    const WaveformRecord w = render(ensemble[i], pulse, grid, config.snr_db,
                                                    stream_seed(config.seed ^ kNoiseStreamSalt, i));
                    io::write_file_atomic(dir / wf_files[i], io::waveform_to_csv(w)); });
            }

            json manifest{{"format", "chansim-manifest"},
                          {"version", 1},
                          {"config", to_json(config)},
                          {"generator", io::to_json(gen)},
                          {"params", io::to_json(resolve_params(config))},
                          {"geometry", io::to_json(run_geometry(config))},
                          {"los_amplitude", run_los_amplitude(config)},
                          {"realization_files", cir_files}};
            if (config.waveforms)
            {
                manifest["grid"] = io::to_json(grid);
                manifest["waveform_files"] = wf_files;
            }
            io::write_file_atomic(dir / "manifest.json", io::dump(manifest));

            std::size_t taps = 0;
            for (const auto &r : ensemble)
                taps += r.taps.size();
            const ReceivedPower p = mean_received_power(ensemble);
            const RadioConstants constants = run_constants(config);
            std::cout << "generated " << n << " realizations into " << dir.string() << "\n"
                      << "seed " << config.seed << "\n"
                      << "mean taps per realization " << fixed(static_cast<double>(taps) / static_cast<double>(n), 3) << "\n"
                      << "average significant MPCs " << fixed(average_significant_mpcs(ensemble), 3) << "\n"
                      << "simulated path loss " << fixed(path_loss_db(p.total, reference_received_power(constants), constants), 3)
                      << " dB\n";
            return kExitOk;
        }
    };

    // ----- analyze -----------------------------------------------------------

    bool wildcard_match(std::string_view pattern, std::string_view text)
    {
        std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
        while (t < text.size())
        {
            if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t]))
            {
                ++p;
                ++t;
            }
            else if (p < pattern.size() && pattern[p] == '*')
            {
                star = p++;
                mark = t;
            }
            else if (star != std::string_view::npos)
            {
                p = star + 1;
                t = ++mark;
            }
            else
                return false;
        }
        while (p < pattern.size() && pattern[p] == '*')
            ++p;
        return p == pattern.size();
    }

    std::vector<fs::path> expand_input(const std::string &input)
    {
        std::vector<fs::path> out;
        const fs::path path(input);
        std::error_code ec;
        if (fs::is_directory(path, ec))
        {
            for (const auto &e : fs::directory_iterator(path, ec))
                if (e.is_regular_file() && e.path().extension() == ".csv")
                    out.push_back(e.path());
        }
        else if (input.find_first_of("*?") != std::string::npos)
        {
            const fs::path parent = path.has_parent_path() ? path.parent_path() : fs::path(".");
            const std::string pattern = path.filename().string();
            for (const auto &e : fs::directory_iterator(parent, ec))
                if (e.is_regular_file() && wildcard_match(pattern, e.path().filename().string()))
                    out.push_back(e.path());
        }
        else if (fs::is_regular_file(path, ec))
            out.push_back(path);
        std::sort(out.begin(), out.end());
        return out;
    }

    struct AnalyzeCmd
    {
        std::vector<std::string> inputs;
        std::string out_file = "report.json", taps_dir, manifest_file, decay_mode, kind = "auto";
        double stop_frac = 0.2, rise_db = 10.0, min_span_ns = 2.0, threshold = 0.2;
        std::size_t smoothing = kDefaultSmoothingSamples;

        void add(CLI::App &app)
        {
            app.add_option("inputs", inputs, "directory, glob or files")->required();
            app.add_option("--out", out_file, "report JSON")->capture_default_str();
            app.add_option("--taps-dir", taps_dir, "write CLEAN-extracted taps here (waveform input)");
            app.add_option("--manifest", manifest_file, "manifest describing the inputs");
            app.add_option("--decay-mode", decay_mode, "rate-as-written | time-constant");
            app.add_option("--kind", kind, "auto | realizations | waveforms")
                ->check(CLI::IsMember({"auto", "realizations", "waveforms"}))
                ->capture_default_str();
            app.add_option("--stop-frac", stop_frac, "CLEAN stopping fraction")->capture_default_str();
            app.add_option("--rise-db", rise_db, "cluster rise/fall threshold [dB]")->capture_default_str();
            app.add_option("--min-span-ns", min_span_ns, "minimum peak-to-fall span [ns]")->capture_default_str();
            app.add_option("--smoothing", smoothing, "PDP moving-average length [samples]")->capture_default_str();
            app.add_option("--threshold", threshold, "significant-MPC amplitude fraction")->capture_default_str();
        }

        int run() const
        {
            std::vector<fs::path> files;
            for (const auto &in : inputs)
            {
                auto more = expand_input(in);
                files.insert(files.end(), more.begin(), more.end());
            }
            std::sort(files.begin(), files.end());
            files.erase(std::unique(files.begin(), files.end()), files.end());
            if (files.empty())
                throw Error(ErrorCode::EmptyInput, "no input files matched");

            fs::path manifest_path = manifest_file;
            if (manifest_path.empty())
            {
                const fs::path guess = files.front().parent_path() / "manifest.json";
                if (fs::is_regular_file(guess))
                    manifest_path = guess;
            }
            RunConfig config;
            json manifest_echo = nullptr;
            SamplingGrid grid;
            if (!manifest_path.empty())
            {
                const json m = load_json_file(manifest_path);
                if (!m.contains("config"))
                    throw Error(ErrorCode::InvalidConfig, manifest_path.string() + ": not a chansim manifest");
                config = run_config_from_json(m.at("config"));
                manifest_echo = m.at("config");
                grid = m.contains("grid") ? io::grid_from_json(m.at("grid")) : SamplingGrid{.window_ns = config.window_ns};
            }
            if (!decay_mode.empty())
                config.decay_mode = RunFlags::parse_or_throw(decay_mode, parse_decay_interpretation, "--decay-mode");
            const bool los = !manifest_path.empty() && los_enabled(config);

            // Classify by header line; a directory holding both kinds is analyzed by --kind.
            std::vector<std::string> texts;
            std::vector<fs::path> kept;
            bool any_taps = false, any_waves = false;
            for (const auto &f : files)
            {
                std::string text = io::read_file(f);
                const std::string_view first = std::string_view(text).substr(0, text.find('\n'));
                bool is_taps = false;
                if (first.starts_with(io::kTapCsvHeader))
                    is_taps = true;
                else if (!first.starts_with(io::kWaveformCsvHeader))
                    throw Error(ErrorCode::ParseError, f.string() + ":1: unrecognized CSV header");
                if ((kind == "realizations" && !is_taps) || (kind == "waveforms" && is_taps))
                    continue;
                (is_taps ? any_taps : any_waves) = true;
                texts.push_back(std::move(text));
                kept.push_back(f);
            }
            if (kept.empty())
                throw Error(ErrorCode::EmptyInput, "no input files of kind " + kind);
            if (any_taps && any_waves)
            {
                std::cerr << "chansim: note: inputs hold realizations and waveforms; analyzing the realizations "
                             "(use --kind waveforms for the others)\n";
                std::vector<std::string> t2;
                std::vector<fs::path> k2;
                for (std::size_t i = 0; i < kept.size(); ++i)
                    if (std::string_view(texts[i]).starts_with(io::kTapCsvHeader))
                    {
                        t2.push_back(std::move(texts[i]));
                        k2.push_back(kept[i]);
                    }
                texts = std::move(t2);
                kept = std::move(k2);
                any_waves = false;
            }
            files = std::move(kept);

            std::vector<ChannelRealization> realizations(files.size());
            std::optional<Pdp> pdp;
            if (any_taps)
            {
                for (std::size_t i = 0; i < files.size(); ++i)
                {
                    ChannelRealization &r = realizations[i];
                    r.taps = io::taps_from_csv(texts[i], files[i].string());
                    r.window_ns = config.window_ns;
                    r.dynamic_range_db = config.dynamic_range_db;
                    r.los_applied = los && !r.taps.empty() && r.taps.front().delay_ns == 0.0;
                }
                pdp = compute_pdp(realizations, grid, smoothing);
            }
            else
            {
                std::vector<WaveformRecord> waves(files.size());
                for (std::size_t i = 0; i < files.size(); ++i)
                    waves[i] = io::waveform_from_csv(texts[i], grid, files[i].string());
                const PulseTemplate pulse = template_pulse(grid);
                for (std::size_t i = 0; i < files.size(); ++i)
                {
                    ChannelRealization &r = realizations[i];
                    r.taps = clean_deconvolve(waves[i], pulse, stop_frac);
                    if (!r.taps.empty())
                    {
                        const Pdp own = compute_pdp(std::span<const WaveformRecord>(&waves[i], 1), smoothing);
                        label_clusters(r.taps, identify_clusters(own, rise_db, min_span_ns));
                    }
                    r.window_ns = grid.window_ns;
                    r.dynamic_range_db = config.dynamic_range_db;
                    r.los_applied = los && !r.taps.empty() && grid.nearest_index(r.taps.front().delay_ns) == 0;
                }
                pdp = compute_pdp(waves, smoothing);
                if (!taps_dir.empty())
                {
                    ensure_directory(taps_dir);
                    for (std::size_t i = 0; i < files.size(); ++i)
                        io::write_file_atomic(fs::path(taps_dir) / (files[i].stem().string() + "_taps.csv"),
                                              io::taps_to_csv(realizations[i].taps));
                }
            }

            const auto clusters = identify_clusters(*pdp, rise_db, min_span_ns);
            std::erase_if(realizations, [](const ChannelRealization &r)
                          { return r.taps.empty(); });
            const double sig = realizations.empty() ? 0.0 : average_significant_mpcs(realizations, threshold);

            std::optional<ParamEstimate> estimate;
            std::string estimate_note;
            try
            {
                estimate = estimate_params(realizations, config.decay_mode);
            }
            catch (const Error &e)
            {
                if (e.code() != ErrorCode::InsufficientData)
                    throw;
                estimate_note = e.what();
                std::cerr << "chansim: warning: " << estimate_note << "\n";
            }

            json jclusters = json::array();
            for (const auto &c : clusters)
                jclusters.push_back(io::to_json(c));
            std::vector<std::string> names;
            for (const auto &f : files)
                names.push_back(f.filename().string());
            json report{{"pdp", io::to_json(*pdp)},
                        {"clusters", jclusters},
                        {"significant_mpc_avg", sig},
                        {"estimates", estimate ? io::to_json(*estimate) : json(nullptr)},
                        {"config",
                         {{"input_kind", any_taps ? "realizations" : "waveforms"},
                          {"inputs", names},
                          {"decay_mode", std::string(to_string(config.decay_mode))},
                          {"los_applied", los},
                          {"stop_frac", stop_frac},
                          {"rise_fall_db", rise_db},
                          {"min_peak_to_fall_ns", min_span_ns},
                          {"smoothing_samples", smoothing},
                          {"significance_threshold", threshold},
                          {"manifest", manifest_echo}}}};
            if (!estimate_note.empty())
                report["estimates_note"] = estimate_note;
            io::write_file_atomic(out_file, io::dump(report));

            std::cout << "records " << files.size() << " (" << (any_taps ? "realizations" : "waveforms") << ")\n"
                      << "ensemble PDP clusters " << clusters.size() << "\n"
                      << "average significant MPCs " << fixed(sig, 3) << "\n";
            if (estimate)
            {
                std::cout << "parameter     estimate\n"
                          << "N_C           " << fixed(estimate->n_clusters_hat, 4) << "\n"
                          << "chi [1/ns]    " << fixed(estimate->chi_hat, 4) << "\n"
                          << "eta           " << fixed(estimate->eta_hat, 4) << "\n"
                          << "varsigma      " << fixed(estimate->varsigma_hat, 4) << "\n"
                          << "gamma         " << fixed(estimate->gamma_hat, 4) << "\n";
            }
            else
                std::cout << "estimates unavailable: " << estimate_note << "\n";
            std::cout << "report written to " << out_file << "\n";
            return kExitOk;
        }
    };

    // ----- pathloss ----------------------------------------------------------

    // "10,20,30" or "start:stop:step".
    std::vector<double> parse_sweep(const std::string &text, const char *what)
    {
        const auto number = [&](std::string_view s)
        {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
                throw Error(ErrorCode::InvalidConfig, std::string("invalid ") + what + " value '" + std::string(s) + "'");
            return v;
        };
        std::vector<double> out;
        const std::string_view s(text);
        if (std::count(s.begin(), s.end(), ':') == 2)
        {
            const auto a = s.find(':'), b = s.find(':', a + 1);
            const double start = number(s.substr(0, a)), stop = number(s.substr(a + 1, b - a - 1)),
                         step = number(s.substr(b + 1));
            if (!(step > 0.0) || stop < start)
                throw Error(ErrorCode::InvalidConfig, std::string("invalid ") + what + " range '" + text + "'");
            for (std::size_t k = 0;; ++k)
            {
                const double v = start + static_cast<double>(k) * step;
                if (v > stop + 1e-9 * step)
                    break;
                out.push_back(v);
            }
        }
        else
        {
            std::size_t pos = 0;
            while (pos <= s.size())
            {
                const auto next = s.find(',', pos);
                out.push_back(number(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
        }
        return out;
    }

    struct PathlossCmd
    {
        RunFlags flags;
        std::string x_spec = "15,30", h_spec = "10,20,30", orient_spec = "both", out_file;
        bool simulate = false;
        unsigned jobs = 1;
        CLI::Option *o_rx_sweep = nullptr;

        void add(CLI::App &app)
        {
            flags.add(app, false);
            flags.o_n->default_val(500);
            app.add_option("--x", x_spec, "horizontal distances [m]: list or start:stop:step")->capture_default_str();
            app.add_option("--h", h_spec, "heights [m]: list or start:stop:step")->capture_default_str();
            app.add_option("--orientations", orient_spec, "VV, VH or both")->capture_default_str();
            app.add_flag("--simulate", simulate, "use the ensemble-mean simulated received power");
            app.add_option("--out", out_file, "CSV file (default: standard output)");
            app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
        }

        int run() const
        {
            const auto xs = parse_sweep(x_spec, "--x");
            const auto hs = parse_sweep(h_spec, "--h");
            for (double x : xs)
                if (!(x > 0.0))
                    throw Error(ErrorCode::InvalidGeometry, "--x values must be positive");
            for (double h : hs)
                if (!(h > 0.0))
                    throw Error(ErrorCode::InvalidGeometry, "--h values must be positive");

            RunConfig base;
            flags.apply(base);
            std::vector<Orientation> orients;
            if (flags.o_orient->count())
                orients = {base.orientation};
            else if (orient_spec == "both")
                orients = {Orientation::VV, Orientation::VH};
            else
                orients = {RunFlags::parse_or_throw(orient_spec, parse_orientation, "--orientations")};

            // Without --rx, h is the vertical separation itself.
            const bool explicit_rx = flags.o_rx->count() > 0;
            const double rx_height = explicit_rx ? receiver_height_m(base.receiver) : 0.0;
            for (double h : hs)
                if (!(h > rx_height))
                    throw Error(ErrorCode::InvalidGeometry, "--h values must exceed the receiver antenna height");

            std::uint64_t seed = 0;
            if (simulate)
            {
                base.seed = seed = resolve_seed(flags.o_seed, flags.seed, std::nullopt);
                if (!flags.o_n->count())
                    base.n_realizations = 500;
            }

            const RadioConstants constants = run_constants(base);
            std::string csv = "x_m,h_m,theta_deg,d_m,orientation,path_loss_db,margin_db\n";
            std::size_t row = 0;
            for (Orientation o : orients)
                for (double h : hs)
                    for (double x : xs)
                    {
                        const LinkGeometry g = make_geometry(x, h - rx_height);
                        double loss = 0.0;
                        if (simulate)
                        {
                            RunConfig c = base;
                            c.orientation = o;
                            c.x_m = x;
                            c.h_m = explicit_rx ? h : h + receiver_height_m(c.receiver);
                            c.seed = sweep_seed(seed, row);
                            loss = simulated_path_loss_db(c, jobs);
                        }
                        else
                        {
                            const double a = los_amplitude(g, o, constants);
                            loss = path_loss_db(a * a, reference_received_power(constants), constants);
                        }
                        csv += fixed(x, 3) + "," + fixed(h, 3) + "," + fixed(g.theta_deg) + "," + fixed(g.d_m) + "," +
                               std::string(to_string(o)) + "," + fixed(loss) + "," + fixed(link_margin_db(loss, constants)) + "\n";
                        ++row;
                    }
            if (out_file.empty())
                std::cout << csv;
            else
                io::write_file_atomic(out_file, csv);
            return kExitOk;
        }
    };

    // ----- roundtrip ---------------------------------------------------------

    struct RoundtripCmd
    {
        std::string scenario = "hovering-open", receiver = "RX1", orientation = "VV", decay_mode, out_file = "roundtrip.json";
        double x_m = 15.0;
        std::size_t n = 1000;
        std::uint64_t seed = 0;
        bool all = false;
        unsigned jobs = 1;
        CLI::Option *o_seed = nullptr;

        void add(CLI::App &app)
        {
            app.add_option("--scenario", scenario)->capture_default_str();
            app.add_option("--rx", receiver)->capture_default_str();
            app.add_option("--orient", orientation)->capture_default_str();
            app.add_option("--x", x_m, "horizontal distance (15 or 30 m)")->capture_default_str();
            app.add_option("--n", n, "realizations per cell")->capture_default_str()->check(CLI::PositiveNumber);
            o_seed = app.add_option("--seed", seed, "master seed");
            app.add_option("--decay-mode", decay_mode, "rate-as-written | time-constant");
            app.add_flag("--all", all, "sweep all 24 table cells");
            app.add_option("--out", out_file, "verdict JSON")->capture_default_str();
            app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
        }

        int run() const
        {
            const DecayInterpretation mode = decay_mode.empty()
                                                 ? DecayInterpretation::RateAsWritten
                                                 : RunFlags::parse_or_throw(decay_mode, parse_decay_interpretation, "--decay-mode");
            std::vector<TableCell> cells;
            if (all)
                cells = all_cells();
            else
            {
                const Scenario s = RunFlags::parse_or_throw(scenario, parse_scenario, "--scenario");
                const Receiver r = RunFlags::parse_or_throw(receiver, parse_receiver, "--rx");
                const Orientation o = RunFlags::parse_or_throw(orientation, parse_orientation, "--orient");
                cells.push_back(TableCell{s, r, o, x_m, lookup_params(s, r, o, x_m)});
            }
            const std::uint64_t master = resolve_seed(o_seed, seed, std::nullopt);
            if (n < kRecommendedRoundTripSize)
                std::cerr << "chansim: warning: sample size below recommendation (n = " << n << " < "
                          << kRecommendedRoundTripSize << ")\n";

            json verdicts = json::array();
            std::size_t passed = 0;
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                const std::uint64_t cell_seed = all ? sweep_seed(master, i) : master;
                const RoundTripVerdict v = roundtrip_cell(cells[i], n, cell_seed, mode, jobs);
                passed += v.pass ? 1 : 0;
                verdicts.push_back(to_json(v));
                std::cout << (v.pass ? "PASS " : "FAIL ") << to_string(v.cell.scenario) << " " << to_string(v.cell.receiver)
                          << " " << to_string(v.cell.orientation) << " x=" << fixed(v.cell.horizontal_distance_m, 0);
                if (v.estimate)
                    std::cout << "  chi " << fixed(v.estimate->chi_hat, 4) << " (" << fixed(100 * v.chi_error, 1) << "%)"
                              << "  eta " << fixed(v.estimate->eta_hat, 4) << " (" << fixed(100 * v.eta_error, 1) << "%)"
                              << "  varsigma " << fixed(v.estimate->varsigma_hat, 4) << " (" << fixed(100 * v.varsigma_error, 1) << "%)"
                              << "  gamma " << fixed(v.estimate->gamma_hat, 4) << " (" << fixed(100 * v.gamma_error, 1) << "%)";
                else
                    std::cout << "  " << v.note;
                std::cout << "\n";
            }
            std::cout << "summary: " << passed << "/" << cells.size() << " PASS\n";

            const json doc{{"seed", master},
                           {"n_realizations", n},
                           {"decay_mode", std::string(to_string(mode))},
                           {"cells", verdicts},
                           {"passed", passed},
                           {"total", cells.size()},
                           {"verdict", passed == cells.size() ? "PASS" : "FAIL"}};
            io::write_file_atomic(out_file, io::dump(doc));
            return passed == cells.size() ? kExitOk : kExitFail;
        }
    };

    // ----- tables ------------------------------------------------------------

    struct TablesCmd
    {
        std::string out_file;
        bool validate_only = false;

        void add(CLI::App &app)
        {
            app.add_option("--out", out_file, "JSON file (default: standard output)");
            app.add_flag("--validate", validate_only, "check the embedded tables and report violations");
        }

        int run() const
        {
            if (validate_only)
            {
                const auto violations = validate_tables();
                for (const auto &v : violations)
                    std::cout << to_string(v.cell.scenario) << " " << to_string(v.cell.receiver) << " "
                              << to_string(v.cell.orientation) << " " << v.cell.horizontal_distance_m << ": " << v.message << "\n";
                std::cout << violations.size() << " violations\n";
                return violations.empty() ? kExitOk : kExitFail;
            }
            const std::string text = io::dump(io::tables_to_json());
            if (out_file.empty())
                std::cout << text;
            else
                io::write_file_atomic(out_file, text);
            return kExitOk;
        }
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"chansim: stochastic UWB air-to-ground channel simulator"};
    app.require_subcommand(1);
    // "--h" is the height flag, so help is long-form only.
    app.set_help_flag("--help", "print this help message and exit");
    app.set_version_flag("--version", "chansim 1.0.0");

    GenerateCmd generate;
    AnalyzeCmd analyze;
    PathlossCmd pathloss;
    RoundtripCmd roundtrip;
    TablesCmd tables;
    generate.add(*app.add_subcommand("generate", "generate channel realizations and a manifest"));
    analyze.add(*app.add_subcommand("analyze", "PDP, clusters and parameter estimates from files"));
    pathloss.add(*app.add_subcommand("pathloss", "path loss and link margin over a geometry sweep"));
    roundtrip.add(*app.add_subcommand("roundtrip", "generate, estimate and compare with the tables"));
    tables.add(*app.add_subcommand("tables", "export or validate the parameter tables"));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "generate")
            return generate.run();
        if (name == "analyze")
            return analyze.run();
        if (name == "pathloss")
            return pathloss.run();
        if (name == "roundtrip")
            return roundtrip.run();
        return tables.run();
    }
    catch (const Error &e)
    {
        std::cerr << "chansim: error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    catch (const json::exception &e)
    {
        std::cerr << "chansim: error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "chansim: error: " << e.what() << "\n";
        return kExitIo;
    }
}
