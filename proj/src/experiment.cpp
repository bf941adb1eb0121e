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

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

using nlohmann::json;

namespace his
{
    std::string format_number(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    std::vector<double> unwrapped_phase(const FieldSnapshot &field)
    {
        const auto &shape = field.shape;
        std::vector<double> out(field.size());
        for (std::size_t p = 0; p < shape.rows; ++p)
        {
            double prev_raw = 0.0;
            for (std::size_t s = 0; s < shape.cols; ++s)
            {
                const std::size_t k = shape.index(p, s);
                const double raw = std::arg(field[k]);
                if (s == 0)
                    out[k] = raw;
                else
                {
                    double d = raw - prev_raw;
                    while (d > pi)
                        d -= 2.0 * pi;
                    while (d <= -pi)
                        d += 2.0 * pi;
                    out[k] = out[k - 1] + d;
                }
                prev_raw = raw;
            }
        }
        return out;
    }

    // ---------------------------------------------------------------- computations

    SweepReport compute_sweep(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const auto geom = cfg.make_geometry();
        const auto ref = cfg.make_reference();
        const auto truths = cfg.sweep_angles();

        SweepReport report;
        report.config = cfg;
        std::vector<double> all_true, all_est;

        for (std::size_t ai = 0; ai < truths.size(); ++ai)
        {
            const double theta = truths[ai];
            const auto e_o = object_field(cfg.make_source(theta), geom);

            SweepRow row;
            row.true_deg = theta;
            std::vector<double> errors;
            double est_sum = 0.0, peak_sum = 0.0;

            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                std::vector<HologramTriplet> cycles;
                for (std::size_t c = 0; c < cfg.snapshots; ++c)
                {
                    const auto fe = cfg.make_frontend(derive_seed(cfg.seed, ai, t * cfg.snapshots + c));
                    auto rec = acquire(e_o, ref, geom, fe);
                    row.clipped += rec.clipped;
                    cycles.push_back(std::move(rec.triplet));
                }
                const auto est = estimate_doa(cycles, ref, geom, cfg.carrier_hz, cfg.scan);
                est_sum += est.theta_deg;
                peak_sum += est.spectrum.peak_coherence;
                errors.push_back(est.theta_deg - theta);
                all_true.push_back(theta);
                all_est.push_back(est.theta_deg);
            }

            const auto n = static_cast<double>(cfg.trials);
            row.est_deg = est_sum / n;
            row.peak_value = peak_sum / n;
            double err_sum = 0.0;
            for (double e : errors)
                err_sum += e;
            row.err_deg = err_sum / n;
            if (cfg.trials > 1)
            {
                double ss = 0.0;
                for (double e : errors)
                    ss += (e - row.err_deg) * (e - row.err_deg);
                row.err_std_deg = std::sqrt(ss / (n - 1.0));
            }
            report.rows.push_back(row);
        }

        const auto m = sweep_errors(all_true, all_est);
        report.max_abs_error_deg = m.max_abs_error_deg;
        report.rmse_deg = m.rmse_deg;
        return report;
    }

    SingleReport compute_single(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const auto geom = cfg.make_geometry();
        const auto ref = cfg.make_reference();
        const double theta = cfg.source.theta_deg;
        const auto e_o = object_field(cfg.make_source(theta), geom);

        SingleReport report;
        report.config = cfg;
        report.true_deg = theta;

        std::vector<HologramTriplet> cycles;
        for (std::size_t c = 0; c < cfg.snapshots; ++c)
        {
            auto rec = acquire(e_o, ref, geom, cfg.make_frontend(derive_seed(cfg.seed, 0, c)));
            report.clipped += rec.clipped;
            cycles.push_back(std::move(rec.triplet));
        }
        report.estimate = estimate_doa(cycles, ref, geom, cfg.carrier_hz, cfg.scan);
        report.holograms = cycles.front();
        report.recovered = psi_recover(cycles.front(), ref);
        report.phase_rad = unwrapped_phase(report.recovered);
        return report;
    }

    NoiseReport compute_noise_study(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const auto geom = cfg.make_geometry();
        const auto ref = cfg.make_reference();
        const double theta = cfg.source.theta_deg;
        const auto e_o = object_field(cfg.make_source(theta), geom);

        NoiseReport report;
        report.config = cfg;
        const auto trials = cfg.noise.trials;
        for (const double sigma : cfg.noise.sigmas)
        {
            double field_acc = 0.0, doa_sq = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                auto fe = cfg.make_frontend(derive_seed(cfg.seed, t));
                fe.awgn_sigma = sigma;
                const auto rec = acquire(e_o, ref, geom, fe);
                const auto recovered = psi_recover(rec.triplet, ref);
                field_acc += rms_field_error(recovered, e_o);
                const double err = bartlett_spectrum(recovered, geom, cfg.carrier_hz, cfg.scan).peak_deg - theta;
                doa_sq += err * err;
            }
            const auto n = static_cast<double>(trials);
            report.rows.push_back({sigma, field_acc / n, std::sqrt(doa_sq / n)});
        }
        return report;
    }

    // ---------------------------------------------------------------- serialization

    std::string sweep_csv(const SweepReport &r)
    {
        std::string out(sweep_csv_header);
        out += '\n';
        for (const auto &row : r.rows)
            out += format_number(row.true_deg) + ',' + format_number(row.est_deg) + ',' + format_number(row.err_deg) +
                   ',' + format_number(row.peak_value) + ',' + std::to_string(row.clipped) + '\n';
        return out;
    }

    std::string spectrum_csv(const BartlettSpectrum &s)
    {
        std::string out(spectrum_csv_header);
        out += '\n';
        for (std::size_t i = 0; i < s.values.size(); ++i)
            out += format_number(s.angles_deg[i]) + ',' + format_number(s.values[i]) + '\n';
        return out;
    }

    std::string holograms_csv(const HologramTriplet &t)
    {
        std::string out(holograms_csv_header);
        out += '\n';
        for (std::size_t p = 0; p < t.shape.rows; ++p)
            for (std::size_t s = 0; s < t.shape.cols; ++s)
            {
                const std::size_t k = t.shape.index(p, s);
                out += std::to_string(p) + ',' + std::to_string(s) + ',' + format_number(t.i0[k]) + ',' +
                       format_number(t.i90[k]) + ',' + format_number(t.i180[k]) + '\n';
            }
        return out;
    }

    std::string phase_csv(const GridShape &shape, const std::vector<double> &phase_rad)
    {
        if (phase_rad.size() != shape.size())
            throw DimensionError("phase_csv: phase list does not match the grid");
        std::string out(phase_csv_header);
        out += '\n';
        for (std::size_t p = 0; p < shape.rows; ++p)
            for (std::size_t s = 0; s < shape.cols; ++s)
                out += std::to_string(p) + ',' + std::to_string(s) + ',' +
                       format_number(phase_rad[shape.index(p, s)]) + '\n';
        return out;
    }

    std::string noise_csv(const NoiseReport &r)
    {
        std::string out(noise_csv_header);
        out += '\n';
        for (const auto &row : r.rows)
            out += format_number(row.sigma) + ',' + format_number(row.rms_field_error) + ',' +
                   format_number(row.doa_rmse_deg) + '\n';
        return out;
    }

    namespace
    {
        json report_header(const char *mode, const ExperimentConfig &cfg)
        {
            json j;
            j["tool"] = std::string(tool_name);
            j["version"] = std::string(tool_version);
            j["mode"] = mode;
            j["seed"] = cfg.seed;
            j["config"] = config_to_json(cfg, false);
            return j;
        }
    }

    json report_json(const SweepReport &r)
    {
        json j = report_header("sweep", r.config);
        json rows = json::array();
        for (const auto &row : r.rows)
            rows.push_back({{"true_deg", row.true_deg},
                            {"est_deg", row.est_deg},
                            {"err_deg", row.err_deg},
                            {"err_std_deg", row.err_std_deg},
                            {"peak_value", row.peak_value},
                            {"clipped", row.clipped}});
        j["rows"] = std::move(rows);
        j["aggregates"] = {{"max_abs_error_deg", r.max_abs_error_deg}, {"rmse_deg", r.rmse_deg}};
        j["metadata"] = {{"angle_set", "reconstructed"},
                         {"angle_set_note", "uniform lattice over the configured sweep range, not a measured angle list"}};
        return j;
    }

    json report_json(const SingleReport &r)
    {
        json j = report_header("single", r.config);
        j["true_deg"] = r.true_deg;
        j["est_deg"] = r.estimate.theta_deg;
        j["err_deg"] = r.estimate.theta_deg - r.true_deg;
        j["peak_index"] = r.estimate.spectrum.peak_index;
        j["peak_grid_deg"] = r.estimate.spectrum.angles_deg[r.estimate.spectrum.peak_index];
        j["peak_value"] = r.estimate.spectrum.peak_value;
        j["peak_coherence"] = r.estimate.spectrum.peak_coherence;
        j["clipped"] = r.clipped;
        return j;
    }

    json report_json(const NoiseReport &r)
    {
        json j = report_header("noise", r.config);
        json rows = json::array();
        for (const auto &row : r.rows)
            rows.push_back(
                {{"sigma", row.sigma}, {"rms_field_error", row.rms_field_error}, {"doa_rmse_deg", row.doa_rmse_deg}});
        j["rows"] = std::move(rows);
        return j;
    }

    // ---------------------------------------------------------------- writers

    namespace
    {
        std::filesystem::path prepare_dir(const std::string &dir)
        {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec || !std::filesystem::is_directory(dir))
                throw IoError("cannot create output directory " + dir + (ec ? ": " + ec.message() : std::string()));
            return dir;
        }

        void write_file(const std::filesystem::path &path, const std::string &content)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot open " + path.string() + " for writing");
            out << content;
            out.flush();
            if (!out)
                throw IoError("failed writing " + path.string());
        }

        std::string dump(const json &j) { return j.dump(2) + '\n'; }

        constexpr const char *sweep_plot = "set datafile separator ','\n"
                                           "set key top left\n"
                                           "set xlabel 'true DOA (deg)'\n"
                                           "set ylabel 'estimated DOA (deg)'\n"
                                           "set grid\n"
                                           "plot 'sweep.csv' using 1:2 skip 1 with points pt 7 title 'estimated', \\\n"
                                           "     x with lines dt 2 title 'ideal'\n";

        constexpr const char *single_plot = "set datafile separator ','\n"
                                            "set xlabel 'azimuth (deg)'\n"
                                            "set ylabel 'normalized Bartlett spectrum'\n"
                                            "set grid\n"
                                            "plot 'spectrum.csv' using 1:2 skip 1 with lines title 'spectrum'\n";
    }

    SweepReport run_sweep(const ExperimentConfig &cfg)
    {
        auto report = compute_sweep(cfg);
        const auto dir = prepare_dir(cfg.output_dir);
        write_file(dir / "sweep.csv", sweep_csv(report));
        write_file(dir / "report.json", dump(report_json(report)));
        write_file(dir / "plot.gp", sweep_plot);
        return report;
    }

    SingleReport run_single(const ExperimentConfig &cfg)
    {
        auto report = compute_single(cfg);
        const auto dir = prepare_dir(cfg.output_dir);
        write_file(dir / "spectrum.csv", spectrum_csv(report.estimate.spectrum));
        write_file(dir / "holograms.csv", holograms_csv(report.holograms));
        write_file(dir / "phase.csv", phase_csv(report.recovered.shape, report.phase_rad));
        write_file(dir / "report.json", dump(report_json(report)));
        write_file(dir / "plot.gp", single_plot);
        return report;
    }

    NoiseReport run_noise_study(const ExperimentConfig &cfg)
    {
        auto report = compute_noise_study(cfg);
        const auto dir = prepare_dir(cfg.output_dir);
        write_file(dir / "noise.csv", noise_csv(report));
        write_file(dir / "report.json", dump(report_json(report)));
        return report;
    }
}
