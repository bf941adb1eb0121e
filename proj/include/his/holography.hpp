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

#ifndef HIS_HOLOGRAPHY_HPP
#define HIS_HOLOGRAPHY_HPP

#include "his/array_model.hpp"

#include <array>
#include <vector>

namespace his
{
    // Reference phase offsets of the three acquisitions, applied on top of ReferenceWave::global_phase
    inline constexpr std::array<double, 3> psi_phase_offsets = {0.0, pi / 2.0, pi};

    // Three phase-diverse power maps I(0), I(pi/2), I(pi), one value per unit
    struct HologramTriplet
    {
        GridShape shape;
        std::vector<double> i0;
        std::vector<double> i90;
        std::vector<double> i180;

        // Throws DimensionError unless all three lists match the shape, DomainError on a negative entry
        void validate() const;

        const std::vector<double> &state(std::size_t k) const { return k == 0 ? i0 : (k == 1 ? i90 : i180); }
        std::vector<double> &state(std::size_t k) { return k == 0 ? i0 : (k == 1 ? i90 : i180); }
    };

    // Split of E_c = E_r * I(0): (|E_r|^2 + A_o^2) E_r + |E_r|^2 E_o + E_r^2 E_o*
    // With an ideal divider |E_r|^2 = A_r^2 and E_r^2 = A_r^2 exp(j 2 arg E_r).
    struct ReconstructionComponents
    {
        FieldSnapshot combined;       // E_c
        FieldSnapshot dc_term;
        FieldSnapshot object_term;
        FieldSnapshot conjugate_term;
    };

    // |e_o + e_r|^2 per unit; throws DimensionError if the snapshots differ in shape
    std::vector<double> form_hologram(const FieldSnapshot &e_o, const FieldSnapshot &e_r);

    // Holograms with the reference stepped through psi_phase_offsets
    HologramTriplet synthesize_triplet(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom);

    // Three-step phase-shifting recovery
    //   E_o = (1 - j) / (4 E_r*) * [I(0) - I(pi/2) + j (I(pi/2) - I(pi))]
    // where E_r is the reference in its unshifted state (offset 0 on top of ref.global_phase).
    // Throws SingularReferenceError if E_r vanishes at any unit.
    FieldSnapshot psi_recover(const HologramTriplet &triplet, const ReferenceWave &ref);

    // Direct illumination of the I(0) hologram by the reference and its three-term split.
    // Requires a constant-amplitude object wave; throws DecompositionError otherwise.
    ReconstructionComponents naive_reconstruct(const FieldSnapshot &e_o, const ReferenceWave &ref,
                                               const ArrayGeometry &geom);
}

#endif
