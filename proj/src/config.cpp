// SPDX-License-Identifier: Apache-2.0
//
// his-sim: simulator for holographic interference surfaces
// Copyright (C) 2026 The his-sim authors
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

#include "his/errors.hpp"
#include "his/experiment.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

using nlohmann::json;

namespace his
{
    namespace
    {
        // Walks one JSON object, tracking the dotted path for error messages
        class Section
        {
        public:
            Section(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
            }

            void allow_only(std::initializer_list<const char *> keys) const
            {
                for (const auto &item : j_.items())
                {
                    bool known = false;
                    for (const char *k : keys)
                        known = known || item.key() == k;
                    if (!known)
                        throw ConfigError(child(item.key()), "unknown key");
                }
            }

            void number(const char *key, double &out) const
            {
                if (!j_.contains(key))
                    return;
                const auto &v = j_.at(key);
                if (!v.is_number())
                    throw ConfigError(child(key), "expected a number");
                out = v.get<double>();
                if (!std::isfinite(out))
                    throw ConfigError(child(key), "expected a finite number");
            }

            void optional_number(const char *key, std::optional<double> &out) const
            {
                if (!j_.contains(key))
                    return;
                if (j_.at(key).is_null())
                {
                    out.reset();
                    return;
                }
                double v = 0.0;
                number(key, v);
                out = v;
            }

            template <typename Int>
            void integer(const char *key, Int &out) const
            {
                if (!j_.contains(key))
                    return;
                const auto &v = j_.at(key);
                if (v.is_number_unsigned())
                {
                    const auto u = v.get<std::uint64_t>();
                    if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
                        throw ConfigError(child(key), "integer out of range");
                    out = static_cast<Int>(u);
                }
                else if (v.is_number_integer())
                {
                    const auto s = v.get<std::int64_t>();
                    if constexpr (std::is_unsigned_v<Int>)
                        if (s < 0)
                            throw ConfigError(child(key), "expected a non-negative integer");
                    out = static_cast<Int>(s);
                }
                else
                    throw ConfigError(child(key), "expected an integer");
            }

            void optional_integer(const char *key, std::optional<int> &out) const
            {
                if (!j_.contains(key))
                    return;
                if (j_.at(key).is_null())
                {
                    out.reset();
                    return;
                }
                int v = 0;
                integer(key, v);
                out = v;
            }

            void string(const char *key, std::string &out) const
            {
                if (!j_.contains(key))
                    return;
                if (!j_.at(key).is_string())
                    throw ConfigError(child(key), "expected a string");
                out = j_.at(key).get<std::string>();
            }

            void number_list(const char *key, std::vector<double> &out) const
            {
                if (!j_.contains(key))
                    return;
                const auto &v = j_.at(key);
                if (!v.is_array())
                    throw ConfigError(child(key), "expected an array of numbers");
                std::vector<double> list;
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
                        throw ConfigError(child(key) + "[" + std::to_string(i) + "]", "expected a finite number");
                    list.push_back(v[i].get<double>());
                }
                out = std::move(list);
            }

            bool has(const char *key) const { return j_.contains(key); }
            Section sub(const char *key) const { return Section(j_.at(key), child(key)); }

        private:
            std::string child(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            const json &j_;
            std::string path_;
        };

        void fail_unless(bool ok, const char *path, const char *message)
        {
            if (!ok)
                throw ConfigError(path, message);
        }

        void validate_grid(double start, double stop, double step, const char *prefix)
        {
            const std::string p(prefix);
            fail_unless(step > 0.0, (p + ".step_deg").c_str(), "must be > 0");
            fail_unless(start >= -90.0 && start <= 90.0, (p + ".start_deg").c_str(), "must lie in [-90, 90]");
            fail_unless(stop >= -90.0 && stop <= 90.0, (p + ".stop_deg").c_str(), "must lie in [-90, 90]");
        }

        json optional_to_json(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }
        json optional_to_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }
    }

    void ExperimentConfig::validate() const
    {
        fail_unless(geometry.rows >= 1, "geometry.rows", "must be >= 1");
        fail_unless(geometry.cols >= 1, "geometry.cols", "must be >= 1");
        fail_unless(geometry.pitch_h_mm > 0.0, "geometry.pitch_h_mm", "must be > 0");
        fail_unless(geometry.pitch_v_mm > 0.0, "geometry.pitch_v_mm", "must be > 0");
        fail_unless(carrier_hz > 0.0, "carrier_hz", "must be > 0");
        fail_unless(reference.amplitude > 0.0, "reference.amplitude", "must be > 0");
        fail_unless(source.amplitude >= 0.0, "source.amplitude", "must be >= 0");
        fail_unless(std::abs(source.theta_deg) <= 90.0, "source.theta_deg", "must lie in [-90, 90]");

        validate_grid(source.sweep.start_deg, source.sweep.stop_deg, source.sweep.step_deg, "source.sweep");
        fail_unless(source.sweep.start_deg <= source.sweep.stop_deg, "source.sweep.stop_deg", "must be >= start_deg");

        if (frontend.phase_shifter_bits)
            fail_unless(*frontend.phase_shifter_bits >= 1 && *frontend.phase_shifter_bits <= 52,
                        "frontend.phase_shifter_bits", "must lie in [1, 52] or be null");
        fail_unless(frontend.divider_sigma >= 0.0, "frontend.divider_sigma", "must be >= 0");
        fail_unless(frontend.awgn_sigma >= 0.0, "frontend.awgn_sigma", "must be >= 0");
        fail_unless(frontend.detector_noise_sigma >= 0.0, "frontend.detector_noise_sigma", "must be >= 0");
        if (frontend.adc_bits)
            fail_unless(*frontend.adc_bits >= 1 && *frontend.adc_bits <= 52, "frontend.adc_bits",
                        "must lie in [1, 52] or be null");
        if (frontend.adc_full_scale)
            fail_unless(*frontend.adc_full_scale > 0.0, "frontend.adc_full_scale", "must be > 0 or null");

        validate_grid(scan.start_deg, scan.stop_deg, scan.step_deg, "scan");
        fail_unless(scan.start_deg < scan.stop_deg, "scan.stop_deg", "must be > start_deg");
        fail_unless(scan.size() >= 2, "scan.step_deg", "scan must contain at least two points");

        fail_unless(trials >= 1, "trials", "must be >= 1");
        fail_unless(snapshots >= 1, "snapshots", "must be >= 1");
        fail_unless(!output_dir.empty(), "output_dir", "must not be empty");
        fail_unless(noise.trials >= 1, "noise.trials", "must be >= 1");
        for (double s : noise.sigmas)
            fail_unless(s >= 0.0, "noise.sigmas", "entries must be >= 0");
    }

    ArrayGeometry ExperimentConfig::make_geometry() const
    {
        return ArrayGeometry(geometry.rows, geometry.cols, geometry.pitch_h_mm * 1e-3, geometry.pitch_v_mm * 1e-3);
    }

    ReferenceWave ExperimentConfig::make_reference() const
    {
        ReferenceWave r;
        r.amplitude = reference.amplitude;
        r.carrier_hz = carrier_hz;
        r.global_phase = deg_to_rad(reference.phase_deg);
        return r;
    }

    PlaneWaveSource ExperimentConfig::make_source(double theta_deg) const
    {
        PlaneWaveSource s;
        s.amplitude = source.amplitude;
        s.azimuth_deg = theta_deg;
        s.carrier_hz = carrier_hz;
        s.phase0 = deg_to_rad(source.phase_deg);
        return s;
    }

    FrontendConfig ExperimentConfig::make_frontend(std::uint64_t s) const
    {
        FrontendConfig f;
        f.phase_shifter_bits = frontend.phase_shifter_bits;
        f.divider_sigma = frontend.divider_sigma;
        f.awgn_sigma = frontend.awgn_sigma;
        f.detector_noise_sigma = frontend.detector_noise_sigma;
        f.adc_bits = frontend.adc_bits;
        f.adc_full_scale = frontend.adc_full_scale;
        f.seed = s;
        return f;
    }

    std::vector<double> ExperimentConfig::sweep_angles() const
    {
        const auto &sw = source.sweep;
        const auto n = static_cast<std::size_t>(std::floor((sw.stop_deg - sw.start_deg) / sw.step_deg + 1e-9)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = std::min(sw.start_deg + static_cast<double>(i) * sw.step_deg, sw.stop_deg);
        return out;
    }

    ExperimentConfig config_from_json(const json &j)
    {
        ExperimentConfig c;
        const Section root(j, "");
        root.allow_only({"geometry", "carrier_hz", "reference", "source", "frontend", "scan", "trials", "snapshots",
                         "seed", "output_dir", "noise"});

        if (root.has("geometry"))
        {
            const auto g = root.sub("geometry");
            g.allow_only({"rows", "cols", "pitch_h_mm", "pitch_v_mm"});
            g.integer("rows", c.geometry.rows);
            g.integer("cols", c.geometry.cols);
            g.number("pitch_h_mm", c.geometry.pitch_h_mm);
            g.number("pitch_v_mm", c.geometry.pitch_v_mm);
        }
        root.number("carrier_hz", c.carrier_hz);
        if (root.has("reference"))
        {
            const auto r = root.sub("reference");
            r.allow_only({"amplitude", "phase_deg"});
            r.number("amplitude", c.reference.amplitude);
            r.number("phase_deg", c.reference.phase_deg);
        }
        if (root.has("source"))
        {
            const auto s = root.sub("source");
            s.allow_only({"amplitude", "phase_deg", "theta_deg", "sweep"});
            s.number("amplitude", c.source.amplitude);
            s.number("phase_deg", c.source.phase_deg);
            s.number("theta_deg", c.source.theta_deg);
            if (s.has("sweep"))
            {
                const auto sw = s.sub("sweep");
                sw.allow_only({"start_deg", "stop_deg", "step_deg"});
                sw.number("start_deg", c.source.sweep.start_deg);
                sw.number("stop_deg", c.source.sweep.stop_deg);
                sw.number("step_deg", c.source.sweep.step_deg);
            }
        }
        if (root.has("frontend"))
        {
            const auto f = root.sub("frontend");
            f.allow_only({"phase_shifter_bits", "divider_sigma", "awgn_sigma", "detector_noise_sigma", "adc_bits",
                          "adc_full_scale"});
            f.optional_integer("phase_shifter_bits", c.frontend.phase_shifter_bits);
            f.number("divider_sigma", c.frontend.divider_sigma);
            f.number("awgn_sigma", c.frontend.awgn_sigma);
            f.number("detector_noise_sigma", c.frontend.detector_noise_sigma);
            f.optional_integer("adc_bits", c.frontend.adc_bits);
            f.optional_number("adc_full_scale", c.frontend.adc_full_scale);
        }
        if (root.has("scan"))
        {
            const auto s = root.sub("scan");
            s.allow_only({"start_deg", "stop_deg", "step_deg"});
            s.number("start_deg", c.scan.start_deg);
            s.number("stop_deg", c.scan.stop_deg);
            s.number("step_deg", c.scan.step_deg);
        }
        root.integer("trials", c.trials);
        root.integer("snapshots", c.snapshots);
        root.integer("seed", c.seed);
        root.string("output_dir", c.output_dir);
        if (root.has("noise"))
        {
            const auto n = root.sub("noise");
            n.allow_only({"sigmas", "trials"});
            n.number_list("sigmas", c.noise.sigmas);
            n.integer("trials", c.noise.trials);
        }

        c.validate();
        return c;
    }

    json config_to_json(const ExperimentConfig &c, bool include_output_dir)
    {
        json j;
        j["geometry"] = {{"rows", c.geometry.rows},
                         {"cols", c.geometry.cols},
                         {"pitch_h_mm", c.geometry.pitch_h_mm},
                         {"pitch_v_mm", c.geometry.pitch_v_mm}};
        j["carrier_hz"] = c.carrier_hz;
        j["reference"] = {{"amplitude", c.reference.amplitude}, {"phase_deg", c.reference.phase_deg}};
        j["source"] = {{"amplitude", c.source.amplitude},
                       {"phase_deg", c.source.phase_deg},
                       {"theta_deg", c.source.theta_deg},
                       {"sweep",
                        {{"start_deg", c.source.sweep.start_deg},
                         {"stop_deg", c.source.sweep.stop_deg},
                         {"step_deg", c.source.sweep.step_deg}}}};
        j["frontend"] = {{"phase_shifter_bits", optional_to_json(c.frontend.phase_shifter_bits)},
                         {"divider_sigma", c.frontend.divider_sigma},
                         {"awgn_sigma", c.frontend.awgn_sigma},
                         {"detector_noise_sigma", c.frontend.detector_noise_sigma},
                         {"adc_bits", optional_to_json(c.frontend.adc_bits)},
                         {"adc_full_scale", optional_to_json(c.frontend.adc_full_scale)}};
        j["scan"] = {{"start_deg", c.scan.start_deg}, {"stop_deg", c.scan.stop_deg}, {"step_deg", c.scan.step_deg}};
        j["trials"] = c.trials;
        j["snapshots"] = c.snapshots;
        j["seed"] = c.seed;
        if (include_output_dir)
            j["output_dir"] = c.output_dir;
        j["noise"] = {{"sigmas", c.noise.sigmas}, {"trials", c.noise.trials}};
        return j;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file " + path.string());
        std::stringstream buffer;
        buffer << in.rdbuf();

        json j;
        try
        {
            j = json::parse(buffer.str(), nullptr, true, /*ignore_comments=*/true);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
        }
        return config_from_json(j);
    }
}
