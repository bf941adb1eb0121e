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

#include "his/holography.hpp"
#include "his/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace his
{
    namespace
    {
        // Constant-amplitude tolerance for the three-term split
        constexpr double plane_wave_tol = 1e-9;

        void require_shape(const GridShape &a, const GridShape &b, const char *where)
        {
            if (!(a == b))
                throw DimensionError(std::string(where) + ": grid shapes differ (" + std::to_string(a.rows) + "x" +
                                     std::to_string(a.cols) + " vs " + std::to_string(b.rows) + "x" +
                                     std::to_string(b.cols) + ")");
        }
    }

    void HologramTriplet::validate() const
    {
        const std::size_t n = shape.size();
        if (i0.size() != n || i90.size() != n || i180.size() != n)
            throw DimensionError("HologramTriplet: hologram lengths do not match the grid");
        for (std::size_t k = 0; k < 3; ++k)
            for (double v : state(k))
                if (!(v >= 0.0))
                    throw DomainError("HologramTriplet: hologram power must be non-negative");
    }

    std::vector<double> form_hologram(const FieldSnapshot &e_o, const FieldSnapshot &e_r)
    {
        require_shape(e_o.shape, e_r.shape, "form_hologram");
        if (e_o.size() != e_r.size())
            throw DimensionError("form_hologram: snapshot lengths differ");

        std::vector<double> power(e_o.size());
        for (std::size_t k = 0; k < power.size(); ++k)
            power[k] = std::norm(e_o[k] + e_r[k]);
        return power;
    }

    HologramTriplet synthesize_triplet(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom)
    {
        require_shape(e_o.shape, geom.shape(), "synthesize_triplet");

        HologramTriplet t;
        t.shape = geom.shape();
        for (std::size_t k = 0; k < psi_phase_offsets.size(); ++k)
        {
            const auto e_r = reference_field(ref.with_phase(ref.global_phase + psi_phase_offsets[k]), geom);
            t.state(k) = form_hologram(e_o, e_r);
        }
        return t;
    }

    FieldSnapshot psi_recover(const HologramTriplet &triplet, const ReferenceWave &ref)
    {
        if (!(ref.amplitude > 0.0))
            throw SingularReferenceError("psi_recover: reference amplitude must be > 0");
        triplet.validate();

        const auto e_r = reference_field(ref, triplet.shape);
        const cplx one_minus_j(1.0, -1.0);

        FieldSnapshot e_o(triplet.shape, cplx(0.0, 0.0));
        for (std::size_t k = 0; k < e_o.size(); ++k)
        {
            const cplx er_conj = std::conj(e_r[k]);
            if (er_conj == cplx(0.0, 0.0))
                throw SingularReferenceError("psi_recover: reference field vanishes at unit " + std::to_string(k));

            const cplx bracket(triplet.i0[k] - triplet.i90[k], triplet.i90[k] - triplet.i180[k]);
            e_o[k] = one_minus_j * bracket / (4.0 * er_conj);
        }
        return e_o;
    }

    ReconstructionComponents naive_reconstruct(const FieldSnapshot &e_o, const ReferenceWave &ref,
                                               const ArrayGeometry &geom)
    {
        require_shape(e_o.shape, geom.shape(), "naive_reconstruct");

        double a_min = std::abs(e_o.values.front());
        double a_max = a_min;
        for (const auto &v : e_o.values)
        {
            a_min = std::min(a_min, std::abs(v));
            a_max = std::max(a_max, std::abs(v));
        }
        if (a_max - a_min > plane_wave_tol)
            throw DecompositionError("naive_reconstruct: object wave amplitude varies across units");
        const double a_o2 = a_max * a_max;

        const auto e_r = reference_field(ref, geom);
        const auto hologram = form_hologram(e_o, e_r);

        const GridShape shape = geom.shape();
        ReconstructionComponents out{FieldSnapshot(shape, cplx()), FieldSnapshot(shape, cplx()),
                                     FieldSnapshot(shape, cplx()), FieldSnapshot(shape, cplx())};
        for (std::size_t k = 0; k < shape.size(); ++k)
        {
            const double ar2 = std::norm(e_r[k]);
            out.combined[k] = e_r[k] * hologram[k];
            out.dc_term[k] = (ar2 + a_o2) * e_r[k];
            out.object_term[k] = ar2 * e_o[k];
            out.conjugate_term[k] = e_r[k] * e_r[k] * std::conj(e_o[k]);
        }
        return out;
    }
}
