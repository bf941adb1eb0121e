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

#ifndef HIS_FRONTEND_HPP
#define HIS_FRONTEND_HPP

#include "his/array_model.hpp"
#include "his/holography.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace his
{
    // Acquisition-chain impairments. A default-constructed config is a transparent front end.
    //
    // Signal path per acquisition state k in {0, pi/2, pi}:
    //   reference phase  -> phase shifter (quantized to 2pi / 2^phase_shifter_bits)
    //   reference field  -> divider imbalance, g_u = 1 + CN(0, divider_sigma^2), drawn once per record
    //   object field     -> + CN(0, awgn_sigma^2), fresh per state
    //   |E_o + E_r|^2    -> + N(0, detector_noise_sigma^2)
    //                    -> clip to [0, full scale] -> uniform mid-rise ADC with 2^adc_bits levels
    struct FrontendConfig
    {
        std::optional<int> phase_shifter_bits;  // nullopt = continuous phase shifter
        double divider_sigma = 0.0;
        double awgn_sigma = 0.0;                // linear field units, total complex variance awgn_sigma^2
        double detector_noise_sigma = 0.0;      // power units
        std::optional<int> adc_bits;            // nullopt = no quantization
        std::optional<double> adc_full_scale;   // nullopt = auto_full_scale() when the ADC is enabled
        std::uint64_t seed = 1;

        void validate() const; // throws DomainError

        bool operator==(const FrontendConfig &) const = default;
    };

    // Bits used when an ADC is requested without an explicit resolution
    inline constexpr int default_adc_bits = 12;

    // 1.25 (A_r + A_o)^2: the ideal maximum hologram value sits at 80% of full scale
    double auto_full_scale(double reference_amplitude, double object_amplitude);

    struct AcquisitionRecord
    {
        HologramTriplet triplet;              // post-impairment
        std::optional<FieldSnapshot> truth;   // clean object field
        FrontendConfig config_used;
        std::uint64_t seed_state = 0;
        std::size_t clipped = 0;              // pre-clip samples outside [0, full scale]
        std::optional<double> full_scale;     // upper clip level actually applied
    };

    // Nearest multiple of 2pi / 2^bits, ties toward the smaller multiple, result in [0, 2pi).
    // With bits == nullopt the phase is only wrapped into [0, 2pi). Throws DomainError for bits < 1.
    double quantize_phase(double phase, std::optional<int> bits);

    // Uniform mid-rise quantizer over [0, full_scale]; input is assumed already clipped
    double adc_quantize(double power, int bits, double full_scale);

    // One PSI acquisition cycle through the impaired front end; deterministic in (inputs, cfg)
    AcquisitionRecord acquire(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom,
                              const FrontendConfig &cfg);

    // Stateless per-trial seed: a splitmix64 hash of (base, a, b)
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept;

    // sqrt(mean_u |estimate_u - truth_u|^2); throws DimensionError on shape mismatch
    double rms_field_error(const FieldSnapshot &estimate, const FieldSnapshot &truth);

    struct NoisePoint
    {
        double sigma = 0.0;
        double rms_error = 0.0; // mean over trials of the per-trial RMS recovery error
    };

    // Monte-Carlo PSI recovery error versus awgn_sigma. Trial t of every sigma uses
    // seed derive_seed(base_cfg.seed, t). Throws DomainError for trials < 1.
    std::vector<NoisePoint> noise_sweep(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom,
                                        const FrontendConfig &base_cfg, std::span<const double> sigma_list,
                                        std::size_t trials);
}

#endif
