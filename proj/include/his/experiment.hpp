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

#ifndef HIS_EXPERIMENT_HPP
#define HIS_EXPERIMENT_HPP

#include "his/array_model.hpp"
#include "his/doa.hpp"
#include "his/frontend.hpp"
#include "his/holography.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace his
{
    inline constexpr std::string_view tool_name = "his-sim";
    inline constexpr std::string_view tool_version = "0.1.0";

    // Fixed CSV headers
    inline constexpr std::string_view sweep_csv_header = "true_deg,est_deg,err_deg,peak_value,clipped";
    inline constexpr std::string_view holograms_csv_header = "row,col,i0,i90,i180";
    inline constexpr std::string_view phase_csv_header = "row,col,phase_rad";
    inline constexpr std::string_view spectrum_csv_header = "angle_deg,value";
    inline constexpr std::string_view noise_csv_header = "sigma,rms_field_error,doa_rmse_deg";

    // Experiment description. Lengths are in mm, angles in degrees and frequencies in Hz; conversion
    // to SI units and radians happens in the accessors below. Every field has a default, so a
    // default-constructed config is the canonical noiseless -60..60 deg sweep.
    struct ExperimentConfig
    {
        struct Geometry
        {
            std::size_t rows = 4;
            std::size_t cols = 8;
            double pitch_h_mm = 60.0;
            double pitch_v_mm = 60.0;
            bool operator==(const Geometry &) const = default;
        };
        struct Reference
        {
            double amplitude = 1.0;
            double phase_deg = 0.0;
            bool operator==(const Reference &) const = default;
        };
        struct Sweep
        {
            double start_deg = -60.0;
            double stop_deg = 60.0;
            double step_deg = 10.0;
            bool operator==(const Sweep &) const = default;
        };
        struct Source
        {
            double amplitude = 1.0;
            double phase_deg = 0.0;
            double theta_deg = 40.0; // DOA for single-angle runs and the noise study
            Sweep sweep;
            bool operator==(const Source &) const = default;
        };
        struct Frontend
        {
            std::optional<int> phase_shifter_bits;
            double divider_sigma = 0.0;
            double awgn_sigma = 0.0;
            double detector_noise_sigma = 0.0;
            std::optional<int> adc_bits;
            std::optional<double> adc_full_scale;
            bool operator==(const Frontend &) const = default;
        };
        struct NoiseStudy
        {
            std::vector<double> sigmas = {1e-3, 1e-2, 1e-1};
            std::size_t trials = 200;
            bool operator==(const NoiseStudy &) const = default;
        };

        Geometry geometry;
        double carrier_hz = default_carrier_hz;
        Reference reference;
        Source source;
        Frontend frontend;
        ScanGrid scan;
        std::size_t trials = 1;    // Monte-Carlo trials per sweep angle
        std::size_t snapshots = 1; // PSI cycles averaged per estimate
        std::uint64_t seed = 1;
        std::string output_dir = "out";
        NoiseStudy noise;

        bool operator==(const ExperimentConfig &) const = default;

        // Throws ConfigError naming the first invalid field
        void validate() const;

        ArrayGeometry make_geometry() const;
        ReferenceWave make_reference() const;
        PlaneWaveSource make_source(double theta_deg) const;
        FrontendConfig make_frontend(std::uint64_t seed) const;
        std::vector<double> sweep_angles() const;
    };

    // Strict JSON mapping: unknown keys and wrong types are ConfigErrors with the dotted key path.
    // Missing keys keep their defaults. The result is validated.
    ExperimentConfig config_from_json(const nlohmann::json &j);
    // output_dir is written only when include_output_dir is set; reports echo the config without it
    nlohmann::json config_to_json(const ExperimentConfig &cfg, bool include_output_dir = true);
    // Throws ConfigError for malformed files, IoError if the file cannot be read
    ExperimentConfig load_config(const std::filesystem::path &path);

    struct SweepRow
    {
        double true_deg = 0.0;
        double est_deg = 0.0;      // mean over trials
        double err_deg = 0.0;      // mean signed error over trials
        double err_std_deg = 0.0;  // sample standard deviation over trials (0 for a single trial)
        double peak_value = 0.0;   // mean peak coherence |a^H h|^2 / (|a|^2 |h|^2)
        std::size_t clipped = 0;   // total over trials and cycles
    };

    struct SweepReport
    {
        std::vector<SweepRow> rows;
        double max_abs_error_deg = 0.0; // over every trial estimate
        double rmse_deg = 0.0;
        ExperimentConfig config;
    };

    struct SingleReport
    {
        double true_deg = 0.0;
        DoaEstimate estimate;
        HologramTriplet holograms;         // first PSI cycle
        FieldSnapshot recovered;           // first PSI cycle
        std::vector<double> phase_rad;     // recovered phase, row-major, unwrapped along columns
        std::size_t clipped = 0;
        ExperimentConfig config;
    };

    struct NoiseRow
    {
        double sigma = 0.0;
        double rms_field_error = 0.0; // mean over trials of the per-trial RMS field error
        double doa_rmse_deg = 0.0;
    };

    struct NoiseReport
    {
        std::vector<NoiseRow> rows;
        ExperimentConfig config;
    };

    // Pure computations; nothing is written
    SweepReport compute_sweep(const ExperimentConfig &cfg);
    SingleReport compute_single(const ExperimentConfig &cfg);
    NoiseReport compute_noise_study(const ExperimentConfig &cfg);

    // Compute and write into cfg.output_dir:
    //   sweep  -> sweep.csv, report.json, plot.gp
    //   single -> spectrum.csv, holograms.csv, phase.csv, report.json, plot.gp
    //   noise  -> noise.csv, report.json
    // Throw IoError when the directory or a file cannot be written.
    SweepReport run_sweep(const ExperimentConfig &cfg);
    SingleReport run_single(const ExperimentConfig &cfg);
    NoiseReport run_noise_study(const ExperimentConfig &cfg);

    // Serializations used by the writers
    std::string sweep_csv(const SweepReport &r);
    std::string spectrum_csv(const BartlettSpectrum &s);
    std::string holograms_csv(const HologramTriplet &t);
    std::string phase_csv(const GridShape &shape, const std::vector<double> &phase_rad);
    std::string noise_csv(const NoiseReport &r);
    nlohmann::json report_json(const SweepReport &r);
    nlohmann::json report_json(const SingleReport &r);
    nlohmann::json report_json(const NoiseReport &r);

    // arg of each unit, unwrapped along each row (column direction)
    std::vector<double> unwrapped_phase(const FieldSnapshot &field);

    // Shortest representation that parses back to the same double
    std::string format_number(double v);
}

#endif
