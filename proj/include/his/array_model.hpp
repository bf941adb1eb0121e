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

#ifndef HIS_ARRAY_MODEL_HPP
#define HIS_ARRAY_MODEL_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace his
{
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double default_carrier_hz = 2.6e9;   // reference generator frequency
    inline constexpr double pi = std::numbers::pi;

    constexpr double deg_to_rad(double deg) noexcept { return deg * pi / 180.0; }
    constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / pi; }

    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;
        friend bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    // Rows/columns of a rectangular array. Per-unit data is stored row-major, index = row * cols + col.
    struct GridShape
    {
        std::size_t rows = 0;
        std::size_t cols = 0;

        std::size_t size() const noexcept { return rows * cols; }
        std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * cols + col; }
        friend bool operator==(const GridShape &, const GridShape &) = default;
    };

    // Planar rectangular array in the z = 0 plane.
    // Columns run along x (the horizontal, azimuth-scanning axis), rows along y.
    // Unit (p, s) sits at (s * pitch_h, p * pitch_v, 0).
    class ArrayGeometry
    {
    public:
        // Throws DomainError for zero rows/cols or non-positive pitch
        ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double pitch_h_m, double pitch_v_m);

        std::size_t n_rows() const noexcept { return shape_.rows; }
        std::size_t n_cols() const noexcept { return shape_.cols; }
        std::size_t n_units() const noexcept { return shape_.size(); }
        const GridShape &shape() const noexcept { return shape_; }
        double pitch_h() const noexcept { return pitch_h_; }
        double pitch_v() const noexcept { return pitch_v_; }

        const Vec3 &position(std::size_t row, std::size_t col) const { return positions_.at(shape_.index(row, col)); }
        std::span<const Vec3> unit_positions() const noexcept { return positions_; }

        // Physical panel extent assuming square units of one pitch each: (cols * pitch_h, rows * pitch_v)
        double extent_h() const noexcept { return static_cast<double>(shape_.cols) * pitch_h_; }
        double extent_v() const noexcept { return static_cast<double>(shape_.rows) * pitch_v_; }

        friend bool operator==(const ArrayGeometry &, const ArrayGeometry &) = default;

    private:
        GridShape shape_;
        double pitch_h_;
        double pitch_v_;
        std::vector<Vec3> positions_;
    };

    // Complex field sampled once per unit, row-major
    struct FieldSnapshot
    {
        GridShape shape;
        std::vector<cplx> values;

        FieldSnapshot() = default;
        FieldSnapshot(GridShape s, std::vector<cplx> v);               // throws DimensionError on size mismatch
        FieldSnapshot(GridShape s, cplx fill) : shape(s), values(s.size(), fill) {}

        std::size_t size() const noexcept { return values.size(); }
        const cplx &at(std::size_t row, std::size_t col) const { return values.at(shape.index(row, col)); }
        cplx &at(std::size_t row, std::size_t col) { return values.at(shape.index(row, col)); }
        const cplx &operator[](std::size_t k) const noexcept { return values[k]; }
        cplx &operator[](std::size_t k) noexcept { return values[k]; }
    };

    // Incident object wave (transmitted by the user equipment)
    struct PlaneWaveSource
    {
        double amplitude = 1.0;                // linear field units
        double azimuth_deg = 0.0;              // DOA, broadside = 0, positive toward increasing column index
        double carrier_hz = default_carrier_hz;
        double phase0 = 0.0;                   // rad, phase at the array origin

        void validate() const; // throws DomainError
    };

    // Locally generated reference wave, distributed to every unit
    struct ReferenceWave
    {
        double amplitude = 1.0;
        double carrier_hz = default_carrier_hz;
        double global_phase = 0.0;      // rad, phase-shifter state
        std::vector<cplx> per_unit_gain; // divider imbalance; empty means ideal (all 1)

        void validate() const; // throws DomainError

        // Copy with global_phase replaced
        ReferenceWave with_phase(double phase) const
        {
            ReferenceWave r = *this;
            r.global_phase = phase;
            return r;
        }
    };

    // 4 x 8 grid of 60 mm units: 240 mm x 480 mm, inside the 250 mm x 480 mm panel
    ArrayGeometry default_his_geometry();

    // c / f; throws DomainError for f <= 0 or non-finite f
    double wavelength(double carrier_hz);

    // exp(j * 2pi/lambda * sin(azimuth) * x) per unit; throws DomainError unless |azimuth| <= 90
    FieldSnapshot steering_vector(const ArrayGeometry &geom, double azimuth_deg, double carrier_hz);

    // amplitude * exp(j phase0) * steering_vector
    FieldSnapshot object_field(const PlaneWaveSource &src, const ArrayGeometry &geom);

    // amplitude * exp(j global_phase) * per_unit_gain; throws DimensionError if the gain list has the wrong length
    FieldSnapshot reference_field(const ReferenceWave &ref, const GridShape &shape);
    inline FieldSnapshot reference_field(const ReferenceWave &ref, const ArrayGeometry &geom)
    {
        return reference_field(ref, geom.shape());
    }
}

#endif
