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

#ifndef HIS_DOA_HPP
#define HIS_DOA_HPP

#include "his/array_model.hpp"
#include "his/holography.hpp"

#include <span>
#include <vector>

namespace his
{
    // Uniform azimuth scan. Point i is start + i * step; the last point does not exceed stop.
    struct ScanGrid
    {
        double start_deg = -60.0;
        double stop_deg = 60.0;
        double step_deg = 0.1;

        void validate() const; // throws DomainError
        std::size_t size() const;
        double angle(std::size_t i) const;
        std::vector<double> angles() const;

        bool operator==(const ScanGrid &) const = default;
    };

    struct BartlettSpectrum
    {
        std::vector<double> angles_deg;
        std::vector<double> values;        // normalized to a maximum of 1
        std::size_t peak_index = 0;        // grid maximum, ties toward the smaller angle
        double peak_deg = 0.0;             // parabolic refinement of peak_index
        double peak_value = 0.0;           // normalized value at peak_index (1)
        double peak_coherence = 0.0;       // un-normalized |a^H h|^2 / (|a|^2 |h|^2) at peak_index, in [0, 1]
    };

    // Single-snapshot Bartlett spectrum
    //   P(theta) = |a(theta)^H h|^2 / (|a(theta)|^2 |h|^2)
    // normalized to peak 1 and refined by a three-point parabola on log P. A grid maximum at either
    // end of the scan is returned as is. Throws DegenerateInputError if h is all zero.
    BartlettSpectrum bartlett_spectrum(const FieldSnapshot &h, const ArrayGeometry &geom, double carrier_hz,
                                       const ScanGrid &grid);

    // Mean of the per-snapshot spectra P(theta), then normalization and refinement as above
    BartlettSpectrum bartlett_spectrum(std::span<const FieldSnapshot> snapshots, const ArrayGeometry &geom,
                                       double carrier_hz, const ScanGrid &grid);

    struct DoaEstimate
    {
        double theta_deg = 0.0;
        BartlettSpectrum spectrum;
    };

    // psi_recover followed by bartlett_spectrum
    DoaEstimate estimate_doa(const HologramTriplet &triplet, const ReferenceWave &ref, const ArrayGeometry &geom,
                             double carrier_hz, const ScanGrid &grid);

    // Multi-cycle variant: one PSI recovery per triplet, spectra averaged
    DoaEstimate estimate_doa(std::span<const HologramTriplet> triplets, const ReferenceWave &ref,
                             const ArrayGeometry &geom, double carrier_hz, const ScanGrid &grid);

    struct SweepMetrics
    {
        std::vector<double> errors_deg; // estimate - truth
        double max_abs_error_deg = 0.0;
        double rmse_deg = 0.0;
    };

    // Throws DimensionError if the lists differ in length
    SweepMetrics sweep_errors(std::span<const double> true_deg, std::span<const double> est_deg);
}

#endif
