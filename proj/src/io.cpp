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

#include "chansim/io.hpp"
#include "chansim/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace chansim::io
{
    using nlohmann::json;

    namespace
    {
        [[noreturn]] void parse_fail(const std::string &source, std::size_t line, const std::string &what)
        {
            throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + what);
        }

        std::vector<std::string_view> split(std::string_view line, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t pos = 0;
            while (true)
            {
                const std::size_t next = line.find(sep, pos);
                out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
            return out;
        }

        template <typename T>
        bool parse_number(std::string_view text, T &out)
        {
            while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
                text.remove_prefix(1);
            while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
                text.remove_suffix(1);
            if (text.empty())
                return false;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
            return ec == std::errc{} && ptr == text.data() + text.size();
        }

        // Iterates over non-empty lines, tracking 1-based line numbers.
        template <typename Fn>
        void for_each_line(std::string_view text, Fn &&fn)
        {
            std::size_t line_no = 0;
            std::size_t pos = 0;
            while (pos <= text.size())
            {
                const std::size_t next = text.find('\n', pos);
                std::string_view line = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
                ++line_no;
                if (!line.empty() && line.back() == '\r')
                    line.remove_suffix(1);
                if (!line.empty())
                    fn(line, line_no);
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
        }

        template <typename E>
        E enum_from(const json &j, const char *key, std::optional<E> (*parse)(std::string_view))
        {
            const std::string s = j.at(key).get<std::string>();
            const auto v = parse(s);
            if (!v)
                throw Error(ErrorCode::ParseError, std::string("invalid value '") + s + "' for " + key);
            return *v;
        }
    }

    std::string format_double(double v)
    {
        char buf[40];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
        return std::string(buf, ec == std::errc{} ? ptr : buf);
    }

    std::string taps_to_csv(std::span<const Tap> taps)
    {
        std::string out(kTapCsvHeader);
        out += '\n';
        for (const Tap &t : taps)
        {
            out += format_double(t.delay_ns);
            out += ',';
            out += format_double(t.amplitude);
            out += ',';
            out += format_double(t.phase_rad);
            out += ',';
            out += std::to_string(t.cluster_index);
            out += ',';
            out += std::to_string(t.ray_index);
            out += '\n';
        }
        return out;
    }

    std::vector<Tap> taps_from_csv(std::string_view text, const std::string &source)
    {
        std::vector<Tap> taps;
        bool header_seen = false;
        for_each_line(text, [&](std::string_view line, std::size_t line_no)
                      {
            if (!header_seen)
            {
                if (line != kTapCsvHeader)
                    parse_fail(source, line_no, "expected header '" + std::string(kTapCsvHeader) + "'");
                header_seen = true;
                return;
            }
            const auto fields = split(line, ',');
            if (fields.size() != 5)
                parse_fail(source, line_no, "expected 5 fields, found " + std::to_string(fields.size()));
            Tap t;
            if (!parse_number(fields[0], t.delay_ns) || !parse_number(fields[1], t.amplitude) ||
                !parse_number(fields[2], t.phase_rad) || !parse_number(fields[3], t.cluster_index) ||
                !parse_number(fields[4], t.ray_index))
                parse_fail(source, line_no, "malformed number");
            if (t.delay_ns < 0.0 || t.amplitude < 0.0 || t.cluster_index < 0 || t.ray_index < 0)
                parse_fail(source, line_no, "negative delay, amplitude or index");
            taps.push_back(t); });
        if (!header_seen)
            parse_fail(source, 1, "empty file, expected header '" + std::string(kTapCsvHeader) + "'");
        if (!text.empty() && text.back() != '\n')
            parse_fail(source, static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                       "truncated record (no line terminator)");
        return taps;
    }

    json to_json(const ScenarioParams &p)
    {
        return json{{"n_clusters_mean", p.n_clusters_mean},
                    {"cluster_rate_per_ns", p.cluster_rate},
                    {"cluster_decay", p.cluster_decay},
                    {"ray_rate_per_ns", p.ray_rate},
                    {"ray_decay", p.ray_decay}};
    }

    ScenarioParams params_from_json(const json &j)
    {
        ScenarioParams p;
        p.cluster_rate = j.at("cluster_rate_per_ns").get<double>();
        p.n_clusters_mean = j.value("n_clusters_mean", p.cluster_rate * 100.0);
        p.cluster_decay = j.at("cluster_decay").get<double>();
        p.ray_rate = j.at("ray_rate_per_ns").get<double>();
        p.ray_decay = j.at("ray_decay").get<double>();
        return p;
    }

    json to_json(const GeneratorConfig &c)
    {
        return json{{"window_ns", c.window_ns},
                    {"decay_mode", std::string(to_string(c.decay_mode))},
                    {"amplitude_fading", std::string(to_string(c.amplitude_fading))},
                    {"dynamic_range_db", c.dynamic_range_db},
                    {"reference_power", c.reference_power},
                    {"seed", c.seed}};
    }

    GeneratorConfig generator_config_from_json(const json &j)
    {
        GeneratorConfig c;
        c.window_ns = j.value("window_ns", c.window_ns);
        if (j.contains("decay_mode"))
            c.decay_mode = enum_from<DecayInterpretation>(j, "decay_mode", parse_decay_interpretation);
        if (j.contains("amplitude_fading"))
            c.amplitude_fading = enum_from<AmplitudeFading>(j, "amplitude_fading", parse_amplitude_fading);
        c.dynamic_range_db = j.value("dynamic_range_db", c.dynamic_range_db);
        c.reference_power = j.value("reference_power", c.reference_power);
        c.seed = j.value("seed", c.seed);
        return c;
    }

    json to_json(const LinkGeometry &g)
    {
        return json{{"x_m", g.x_m}, {"h_m", g.h_m}, {"d_m", g.d_m}, {"theta_deg", g.theta_deg}};
    }

    json to_json(const ChannelRealization &r, const GeneratorConfig &config)
    {
        json taps = json::array();
        for (const Tap &t : r.taps)
            taps.push_back(json{{"delay_ns", t.delay_ns},
                                {"amplitude", t.amplitude},
                                {"phase_rad", t.phase_rad},
                                {"cluster_index", t.cluster_index},
                                {"ray_index", t.ray_index}});
        return json{{"taps", taps},
                    {"params", to_json(r.params)},
                    {"geometry", to_json(r.geometry)},
                    {"seed", r.seed},
                    {"window_ns", r.window_ns},
                    {"dynamic_range_db", r.dynamic_range_db},
                    {"los_applied", r.los_applied},
                    {"generator", to_json(config)}};
    }

    ChannelRealization realization_from_json(const json &j)
    {
        ChannelRealization r;
        for (const json &t : j.at("taps"))
            r.taps.push_back(Tap{t.at("delay_ns").get<double>(), t.at("amplitude").get<double>(),
                                 t.at("phase_rad").get<double>(), t.at("cluster_index").get<int>(),
                                 t.at("ray_index").get<int>()});
        if (j.contains("params"))
            r.params = params_from_json(j.at("params"));
        if (j.contains("geometry"))
        {
            const json &g = j.at("geometry");
            r.geometry = LinkGeometry{g.at("x_m").get<double>(), g.at("h_m").get<double>(), g.at("d_m").get<double>(),
                                      g.at("theta_deg").get<double>()};
        }
        r.seed = j.value("seed", std::uint64_t{0});
        r.window_ns = j.value("window_ns", 100.0);
        r.dynamic_range_db = j.value("dynamic_range_db", 48.0);
        r.los_applied = j.value("los_applied", false);
        return r;
    }

    std::string waveform_to_csv(const WaveformRecord &w)
    {
        std::string out(kWaveformCsvHeader);
        out += '\n';
        for (std::size_t i = 0; i < w.samples.size(); ++i)
        {
            out += std::to_string(i);
            out += ',';
            out += format_double(w.grid.time_ns(i));
            out += ',';
            out += format_double(w.samples[i]);
            out += '\n';
        }
        return out;
    }

    WaveformRecord waveform_from_csv(std::string_view text, const SamplingGrid &grid, const std::string &source)
    {
        WaveformRecord w;
        w.grid = grid;
        bool header_seen = false;
        for_each_line(text, [&](std::string_view line, std::size_t line_no)
                      {
            if (!header_seen)
            {
                if (line != kWaveformCsvHeader)
                    parse_fail(source, line_no, "expected header '" + std::string(kWaveformCsvHeader) + "'");
                header_seen = true;
                return;
            }
            const auto fields = split(line, ',');
            std::size_t index = 0;
            double t = 0.0, v = 0.0;
            if (fields.size() != 3 || !parse_number(fields[0], index) || !parse_number(fields[1], t) ||
                !parse_number(fields[2], v))
                parse_fail(source, line_no, "expected sample_index,time_ns,value");
            if (index != w.samples.size())
                parse_fail(source, line_no, "sample index out of sequence");
            w.samples.push_back(v); });
        if (!header_seen)
            parse_fail(source, 1, "empty file");
        if (w.samples.size() != grid.n_samples())
            parse_fail(source, w.samples.size() + 1,
                       "expected " + std::to_string(grid.n_samples()) + " samples, found " + std::to_string(w.samples.size()));
        return w;
    }

    json to_json(const SamplingGrid &g)
    {
        return json{{"bin_ps", g.bin_ps},
                    {"decimation", g.decimation},
                    {"sample_step_ps", g.sample_step_ps()},
                    {"window_ns", g.window_ns},
                    {"n_samples", g.n_samples()}};
    }

    SamplingGrid grid_from_json(const json &j)
    {
        SamplingGrid g;
        g.bin_ps = j.value("bin_ps", g.bin_ps);
        g.decimation = j.value("decimation", g.decimation);
        g.window_ns = j.value("window_ns", g.window_ns);
        return g;
    }

    json to_json(const WaveformRecord &w)
    {
        return json{{"grid", to_json(w.grid)}, {"samples", w.samples}};
    }

    WaveformRecord waveform_from_json(const json &j)
    {
        WaveformRecord w;
        w.grid = grid_from_json(j.at("grid"));
        w.samples = j.at("samples").get<std::vector<double>>();
        if (w.samples.size() != w.grid.n_samples())
            throw Error(ErrorCode::ParseError, "waveform length does not match its grid");
        return w;
    }

    json tables_to_json()
    {
        json out = json::object();
        for (const TableCell &c : all_cells())
        {
            const std::string distance = std::to_string(static_cast<int>(c.horizontal_distance_m));
            out[std::string(to_string(c.scenario))][std::string(to_string(c.receiver))]
               [std::string(to_string(c.orientation))][distance] = to_json(c.params);
        }
        return out;
    }

    json to_json(const Pdp &pdp)
    {
        return json{{"sample_step_ns", pdp.sample_step_ns},
                    {"smoothing_samples", pdp.smoothing_samples},
                    {"n_records", pdp.n_records},
                    {"peak_power", pdp.peak_power},
                    {"power_db", pdp.power_db},
                    {"smoothed_db", pdp.smoothed_db}};
    }

    json to_json(const ClusterEstimate &c)
    {
        return json{{"start_ns", c.start_ns},
                    {"peak_ns", c.peak_ns},
                    {"end_ns", c.end_ns},
                    {"peak_db", c.peak_db},
                    {"member_mpc_indices", c.member_mpc_indices}};
    }

    json to_json(const ParamEstimate &e)
    {
        return json{{"n_clusters", e.n_clusters_hat},
                    {"chi", e.chi_hat},
                    {"eta", e.eta_hat},
                    {"varsigma", e.varsigma_hat},
                    {"gamma", e.gamma_hat},
                    {"n_realizations", e.n_realizations},
                    {"decay_mode", std::string(to_string(e.decay_mode))},
                    {"effective_window_ns", e.effective_window_ns},
                    {"cluster_arrivals", e.cluster_arrivals},
                    {"ray_arrivals", e.ray_arrivals}};
    }

    std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot open " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_file_atomic(const std::filesystem::path &path, std::string_view contents)
    {
        std::filesystem::path tmp = path;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
            out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
            out.flush();
            if (!out)
                throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
        }
    }

    std::string dump(const json &j)
    {
        return j.dump(2) + "\n";
    }
}
