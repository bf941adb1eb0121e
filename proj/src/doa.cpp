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

#include "his/doa.hpp"
#include "his/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace his
{
    void ScanGrid::validate() const
    {
        if (!std::isfinite(start_deg) || !std::isfinite(stop_deg) || !std::isfinite(step_deg))
            throw DomainError("ScanGrid: bounds and step must be finite");
        if (!(step_deg > 0.0))
            throw DomainError("ScanGrid: step must be > 0");
        if (!(start_deg < stop_deg))
            throw DomainError("ScanGrid: start must be below stop");
        if (start_deg < -90.0 || stop_deg > 90.0)
            throw DomainError("ScanGrid: scan must stay within [-90, 90] deg");
        if (size() < 2)
            throw DomainError("ScanGrid: fewer than two scan points");
    }

    std::size_t ScanGrid::size() const
    {
        // Small slack so that e.g. 120 / 0.1 = 1199.9999... still includes the stop angle
        return static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
    }

    double ScanGrid::angle(std::size_t i) const
    {
        return std::min(start_deg + static_cast<double>(i) * step_deg, stop_deg);
    }

    std::vector<double> ScanGrid::angles() const
    {
        std::vector<double> a(size());
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = angle(i);
        return a;
    }

    namespace
    {
        double energy(const FieldSnapshot &h)
        {
            double e = 0.0;
            for (const auto &v : h.values)
                e += std::norm(v);
            return e;
        }

        // Raw (un-normalized) coherence P(theta) summed over snapshots
        std::vector<double> accumulate_coherence(std::span<const FieldSnapshot> snapshots, const ArrayGeometry &geom,
                                                 double carrier_hz, const std::vector<double> &angles)
        {
            std::vector<double> energies;
            for (const auto &h : snapshots)
            {
                if (!(h.shape == geom.shape()))
                    throw DimensionError("bartlett_spectrum: field does not match the array geometry");
                const double e = energy(h);
                if (!(e > 0.0))
                    throw DegenerateInputError("bartlett_spectrum: recovered field is identically zero");
                energies.push_back(e);
            }

            std::vector<double> p(angles.size(), 0.0);
            for (std::size_t i = 0; i < angles.size(); ++i)
            {
                const auto a = steering_vector(geom, angles[i], carrier_hz);
                const double a_energy = energy(a);
                for (std::size_t s = 0; s < snapshots.size(); ++s)
                {
                    cplx inner(0.0, 0.0);
                    for (std::size_t k = 0; k < a.size(); ++k)
                        inner += std::conj(a[k]) * snapshots[s][k];
                    p[i] += std::norm(inner) / (a_energy * energies[s]);
                }
            }
            for (auto &v : p)
                v /= static_cast<double>(snapshots.size());
            return p;
        }

        BartlettSpectrum finish(const ScanGrid &grid, std::vector<double> angles, std::vector<double> raw)
        {
            BartlettSpectrum sp;
            std::size_t imax = 0;
            for (std::size_t i = 1; i < raw.size(); ++i)
                if (raw[i] > raw[imax])
                    imax = i;

            const double peak_raw = raw[imax];
            sp.peak_index = imax;
            sp.peak_coherence = std::min(peak_raw, 1.0);
            sp.values.resize(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i)
                sp.values[i] = std::clamp(raw[i] / peak_raw, 0.0, 1.0);
            sp.values[imax] = 1.0;
            sp.peak_value = 1.0;

            double peak = angles[imax];
            if (imax > 0 && imax + 1 < raw.size())
            {
                const double l = sp.values[imax - 1];
                const double r = sp.values[imax + 1];
                if (l > 0.0 && r > 0.0)
                {
                    const double yl = std::log(l);
                    const double yr = std::log(r);
                    const double curvature = yl + yr; // log of the peak value is 0
                    if (curvature < 0.0)
                    {
                        const double delta = std::clamp(0.5 * (yl - yr) / curvature, -0.5, 0.5);
                        peak += delta * grid.step_deg;
                    }
                }
            }
            sp.peak_deg = std::clamp(peak, grid.start_deg, grid.stop_deg);
            sp.angles_deg = std::move(angles);
            return sp;
        }
    }

    BartlettSpectrum bartlett_spectrum(std::span<const FieldSnapshot> snapshots, const ArrayGeometry &geom,
                                       double carrier_hz, const ScanGrid &grid)
    {
        grid.validate();
        if (snapshots.empty())
            throw DegenerateInputError("bartlett_spectrum: no snapshots");
        auto angles = grid.angles();
        auto raw = accumulate_coherence(snapshots, geom, carrier_hz, angles);
        return finish(grid, std::move(angles), std::move(raw));
    }

    BartlettSpectrum bartlett_spectrum(const FieldSnapshot &h, const ArrayGeometry &geom, double carrier_hz,
                                       const ScanGrid &grid)
    {
        return bartlett_spectrum(std::span<const FieldSnapshot>(&h, 1), geom, carrier_hz, grid);
    }

    DoaEstimate estimate_doa(std::span<const HologramTriplet> triplets, const ReferenceWave &ref,
                             const ArrayGeometry &geom, double carrier_hz, const ScanGrid &grid)
    {
        std::vector<FieldSnapshot> fields;
        fields.reserve(triplets.size());
        for (const auto &t : triplets)
            fields.push_back(psi_recover(t, ref));

        DoaEstimate est;
        est.spectrum = bartlett_spectrum(fields, geom, carrier_hz, grid);
        est.theta_deg = est.spectrum.peak_deg;
        return est;
    }

    DoaEstimate estimate_doa(const HologramTriplet &triplet, const ReferenceWave &ref, const ArrayGeometry &geom,
                             double carrier_hz, const ScanGrid &grid)
    {
        return estimate_doa(std::span<const HologramTriplet>(&triplet, 1), ref, geom, carrier_hz, grid);
    }

    SweepMetrics sweep_errors(std::span<const double> true_deg, std::span<const double> est_deg)
    {
        if (true_deg.size() != est_deg.size())
            throw DimensionError("sweep_errors: " + std::to_string(true_deg.size()) + " truths vs " +
                                 std::to_string(est_deg.size()) + " estimates");

        SweepMetrics m;
        m.errors_deg.resize(true_deg.size());
        double sq = 0.0;
        for (std::size_t i = 0; i < true_deg.size(); ++i)
        {
            const double e = est_deg[i] - true_deg[i];
            m.errors_deg[i] = e;
            m.max_abs_error_deg = std::max(m.max_abs_error_deg, std::abs(e));
            sq += e * e;
        }
        if (!true_deg.empty())
            m.rmse_deg = std::sqrt(sq / static_cast<double>(true_deg.size()));
        return m;
    }
}
