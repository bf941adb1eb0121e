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

#include "his/array_model.hpp"
#include "his/errors.hpp"

#include <cmath>
#include <string>

namespace his
{
    ArrayGeometry::ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double pitch_h_m, double pitch_v_m)
        : shape_{n_rows, n_cols}, pitch_h_(pitch_h_m), pitch_v_(pitch_v_m)
    {
        if (n_rows == 0 || n_cols == 0)
            throw DomainError("ArrayGeometry: rows and cols must be at least 1");
        if (!(pitch_h_m > 0.0) || !(pitch_v_m > 0.0) || !std::isfinite(pitch_h_m) || !std::isfinite(pitch_v_m))
            throw DomainError("ArrayGeometry: pitch must be positive and finite");

        positions_.reserve(shape_.size());
        for (std::size_t p = 0; p < n_rows; ++p)
            for (std::size_t s = 0; s < n_cols; ++s)
                positions_.push_back({static_cast<double>(s) * pitch_h_m, static_cast<double>(p) * pitch_v_m, 0.0});
    }

    FieldSnapshot::FieldSnapshot(GridShape s, std::vector<cplx> v) : shape(s), values(std::move(v))
    {
        if (values.size() != shape.size())
            throw DimensionError("FieldSnapshot: " + std::to_string(values.size()) + " values for a " +
                                 std::to_string(shape.rows) + "x" + std::to_string(shape.cols) + " grid");
    }

    void PlaneWaveSource::validate() const
    {
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
            throw DomainError("PlaneWaveSource: amplitude must be >= 0");
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw DomainError("PlaneWaveSource: carrier must be > 0");
        if (!(std::abs(azimuth_deg) <= 90.0))
            throw DomainError("PlaneWaveSource: azimuth must lie in [-90, 90] deg");
        if (!std::isfinite(phase0))
            throw DomainError("PlaneWaveSource: phase must be finite");
    }

    void ReferenceWave::validate() const
    {
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
            throw DomainError("ReferenceWave: amplitude must be >= 0");
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw DomainError("ReferenceWave: carrier must be > 0");
        if (!std::isfinite(global_phase))
            throw DomainError("ReferenceWave: phase must be finite");
    }

    ArrayGeometry default_his_geometry()
    {
        return ArrayGeometry(4, 8, 0.060, 0.060);
    }

    double wavelength(double carrier_hz)
    {
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw DomainError("wavelength: carrier frequency must be positive and finite");
        return speed_of_light / carrier_hz;
    }

    FieldSnapshot steering_vector(const ArrayGeometry &geom, double azimuth_deg, double carrier_hz)
    {
        if (!(std::abs(azimuth_deg) <= 90.0))
            throw DomainError("steering_vector: azimuth must lie in [-90, 90] deg");

        const double k = 2.0 * pi / wavelength(carrier_hz);
        const double kx = k * std::sin(deg_to_rad(azimuth_deg));

        FieldSnapshot a(geom.shape(), cplx(1.0, 0.0));
        if (kx == 0.0)
            return a; // broadside is exactly all-ones

        const auto pos = geom.unit_positions();
        for (std::size_t i = 0; i < pos.size(); ++i)
            a[i] = std::polar(1.0, kx * pos[i].x);
        return a;
    }

    FieldSnapshot object_field(const PlaneWaveSource &src, const ArrayGeometry &geom)
    {
        src.validate();
        FieldSnapshot e = steering_vector(geom, src.azimuth_deg, src.carrier_hz);
        const cplx scale = std::polar(src.amplitude, src.phase0);
        for (auto &v : e.values)
            v *= scale;
        return e;
    }

    FieldSnapshot reference_field(const ReferenceWave &ref, const GridShape &shape)
    {
        ref.validate();
        if (!ref.per_unit_gain.empty() && ref.per_unit_gain.size() != shape.size())
            throw DimensionError("reference_field: per_unit_gain has " + std::to_string(ref.per_unit_gain.size()) +
                                 " entries, expected " + std::to_string(shape.size()));

        const cplx base = std::polar(ref.amplitude, ref.global_phase);
        FieldSnapshot e(shape, base);
        if (!ref.per_unit_gain.empty())
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = base * ref.per_unit_gain[i];
        return e;
    }
}
