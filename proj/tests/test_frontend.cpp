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

#include <catch2/catch_amalgamated.hpp>

#include "his/errors.hpp"
#include "his/frontend.hpp"
#include "oracles.hpp"

#include <array>
#include <cmath>

using Catch::Approx;
using namespace his;

// Covered tests:
// - Phase quantizer against exhaustive level enumeration, ties, wrapping
// - ADC quantizer monotonicity and range
// - Transparency of the ideal front end, 2-bit phase shifter grid membership
// - Determinism, seed sensitivity, clip accounting
// - Divider imbalance is static within a record
// - Noise sweep: zero noise, monotonicity, small-noise linearity

namespace
{
    struct Scene
    {
        ArrayGeometry geom = default_his_geometry();
        ReferenceWave ref;
        FieldSnapshot e_o;

        explicit Scene(double theta_deg = 20.0, double amp = 1.0)
        {
            PlaneWaveSource src;
            src.azimuth_deg = theta_deg;
            src.amplitude = amp;
            src.phase0 = 0.3;
            e_o = object_field(src, geom);
        }
    };

    bool same_triplet(const HologramTriplet &a, const HologramTriplet &b)
    {
        return a.shape == b.shape && a.i0 == b.i0 && a.i90 == b.i90 && a.i180 == b.i180;
    }
}

TEST_CASE("Frontend - quantize_phase examples")
{
    CHECK(quantize_phase(oracle::pi / 2.0, 2) == oracle::pi / 2.0);
    CHECK(quantize_phase(0.8, 3) == Approx(0.7854).margin(1e-4));
    CHECK(quantize_phase(0.8, 3) == oracle::pi / 4.0);
    CHECK(quantize_phase(0.0, 2) == 0.0);
    CHECK(quantize_phase(oracle::pi, 2) == oracle::pi);

    // Unbounded: wrap only
    CHECK(quantize_phase(1.234, std::nullopt) == 1.234);
    CHECK(quantize_phase(-oracle::pi / 2.0, std::nullopt) == Approx(1.5 * oracle::pi).epsilon(1e-15));
    CHECK(quantize_phase(7.0, std::nullopt) == Approx(7.0 - 2.0 * oracle::pi).epsilon(1e-15));

    // Exact tie between 0 and pi/2 goes to the smaller multiple
    CHECK(quantize_phase(oracle::pi / 4.0, 2) == 0.0);
    // Just below 2pi snaps to level 0, not 2pi
    CHECK(quantize_phase(2.0 * oracle::pi - 1e-6, 3) == 0.0);

    CHECK_THROWS_AS(quantize_phase(1.0, 0), DomainError);
}

TEST_CASE("Frontend - quantize_phase matches exhaustive enumeration")
{
    oracle::Gen gen(3);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const int bits = static_cast<int>(gen.uniform(1.0, 9.0));
        const double x = gen.uniform(-20.0, 20.0);
        const double q = quantize_phase(x, bits);
        CHECK(q >= 0.0);
        CHECK(q < 2.0 * oracle::pi);
        CHECK(q == Approx(oracle::nearest_phase_level(x, bits)).margin(1e-12));
    }
}

TEST_CASE("Frontend - ADC quantizer")
{
    const double fs = 5.0;
    CHECK(adc_quantize(0.0, 2, fs) == Approx(0.625));
    CHECK(adc_quantize(fs, 2, fs) == Approx(4.375));
    CHECK(adc_quantize(1.3, 2, fs) == Approx(1.875));

    // Nondecreasing in the input, outputs on the mid-rise grid
    double prev = -1.0;
    for (int i = 0; i <= 5000; ++i)
    {
        const double p = fs * i / 5000.0;
        const double q = adc_quantize(p, 8, fs);
        CHECK(q >= prev);
        CHECK(std::abs(q - p) <= fs / 256.0 / 2.0 + 1e-12);
        prev = q;
    }
    CHECK(auto_full_scale(1.0, 1.0) == 5.0);
}

TEST_CASE("Frontend - transparent front end reproduces the ideal triplet")
{
    const Scene s(33.0, 0.8);
    const auto ideal = synthesize_triplet(s.e_o, s.ref, s.geom);

    FrontendConfig cfg;
    auto rec = acquire(s.e_o, s.ref, s.geom, cfg);
    CHECK(same_triplet(rec.triplet, ideal));
    CHECK(rec.clipped == 0);
    REQUIRE(rec.truth.has_value());
    CHECK(rec.truth->values == s.e_o.values);
    CHECK(rec.seed_state == cfg.seed);

    // 0, pi/2 and pi are exactly representable with a 2-bit shifter
    cfg.phase_shifter_bits = 2;
    rec = acquire(s.e_o, s.ref, s.geom, cfg);
    CHECK(same_triplet(rec.triplet, ideal));

    // A coarse 1-bit shifter cannot produce pi/2
    cfg.phase_shifter_bits = 1;
    rec = acquire(s.e_o, s.ref, s.geom, cfg);
    CHECK_FALSE(same_triplet(rec.triplet, ideal));
}

TEST_CASE("Frontend - determinism and seed sensitivity")
{
    const Scene s;
    FrontendConfig cfg;
    cfg.awgn_sigma = 0.01;
    cfg.detector_noise_sigma = 0.001;
    cfg.divider_sigma = 0.02;
    cfg.adc_bits = 12;
    cfg.seed = 1234;

    const auto a = acquire(s.e_o, s.ref, s.geom, cfg);
    const auto b = acquire(s.e_o, s.ref, s.geom, cfg);
    CHECK(same_triplet(a.triplet, b.triplet));
    CHECK(a.clipped == b.clipped);

    const auto rec_a = psi_recover(a.triplet, s.ref);
    const double err = rms_field_error(rec_a, s.e_o);
    CHECK(err > 0.0);
    CHECK(err == rms_field_error(psi_recover(b.triplet, s.ref), s.e_o));

    cfg.seed = 1235;
    const auto c = acquire(s.e_o, s.ref, s.geom, cfg);
    CHECK_FALSE(same_triplet(a.triplet, c.triplet));
}

TEST_CASE("Frontend - awgn example is reproducible")
{
    const Scene s(20.0, 1.0);
    FrontendConfig cfg;
    cfg.awgn_sigma = 0.01;
    cfg.seed = 77;
    const double e1 = rms_field_error(psi_recover(acquire(s.e_o, s.ref, s.geom, cfg).triplet, s.ref), s.e_o);
    const double e2 = rms_field_error(psi_recover(acquire(s.e_o, s.ref, s.geom, cfg).triplet, s.ref), s.e_o);
    CHECK(e1 > 0.0);
    CHECK(e1 == e2);
}

TEST_CASE("Frontend - clip accounting")
{
    const Scene s(10.0, 1.0);

    SECTION("count equals pre-clip samples outside the range")
    {
        FrontendConfig cfg;
        cfg.adc_full_scale = 3.0; // ideal holograms reach 4
        const auto ideal = synthesize_triplet(s.e_o, s.ref, s.geom);
        std::size_t expected = 0;
        for (std::size_t k = 0; k < 3; ++k)
            for (double v : ideal.state(k))
                expected += (v < 0.0 || v > 3.0) ? 1 : 0;
        REQUIRE(expected > 0);

        const auto rec = acquire(s.e_o, s.ref, s.geom, cfg);
        CHECK(rec.clipped == expected);
        for (std::size_t k = 0; k < 3; ++k)
            for (double v : rec.triplet.state(k))
            {
                CHECK(v >= 0.0);
                CHECK(v <= 3.0);
            }
    }

    SECTION("heavy detector noise clips at zero")
    {
        FrontendConfig cfg;
        cfg.detector_noise_sigma = 2.0;
        cfg.seed = 9;
        const auto rec = acquire(s.e_o, s.ref, s.geom, cfg);
        CHECK(rec.clipped > 0);
        CHECK_NOTHROW(rec.triplet.validate());
    }

    SECTION("the auto full scale never clips an ideal hologram")
    {
        FrontendConfig cfg;
        cfg.adc_bits = 12;
        const auto rec = acquire(s.e_o, s.ref, s.geom, cfg);
        CHECK(rec.clipped == 0);
        REQUIRE(rec.full_scale.has_value());
        CHECK(*rec.full_scale == Approx(5.0));
    }
}

TEST_CASE("Frontend - divider imbalance is static within a record")
{
    // With no object wave each hologram is |E_r|^2, identical across the three phase states
    Scene s(0.0, 0.0);
    FrontendConfig cfg;
    cfg.divider_sigma = 0.1;
    cfg.seed = 5;
    const auto rec = acquire(s.e_o, s.ref, s.geom, cfg);
    bool varies = false;
    for (std::size_t k = 0; k < 32; ++k)
    {
        CHECK(rec.triplet.i0[k] == Approx(rec.triplet.i90[k]).epsilon(1e-12));
        CHECK(rec.triplet.i0[k] == Approx(rec.triplet.i180[k]).epsilon(1e-12));
        varies = varies || std::abs(rec.triplet.i0[k] - 1.0) > 1e-3;
    }
    CHECK(varies);
}

TEST_CASE("Frontend - invalid configurations")
{
    const Scene s;
    FrontendConfig cfg;
    cfg.awgn_sigma = -0.1;
    CHECK_THROWS_AS(acquire(s.e_o, s.ref, s.geom, cfg), DomainError);
    cfg = {};
    cfg.adc_bits = 0;
    CHECK_THROWS_AS(acquire(s.e_o, s.ref, s.geom, cfg), DomainError);
    cfg = {};
    cfg.adc_full_scale = 0.0;
    CHECK_THROWS_AS(acquire(s.e_o, s.ref, s.geom, cfg), DomainError);
    cfg = {};
    CHECK_THROWS_AS(acquire(FieldSnapshot(GridShape{2, 2}, cplx()), s.ref, s.geom, cfg), DimensionError);
}

TEST_CASE("Frontend - derive_seed")
{
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("Frontend - noise sweep")
{
    const Scene s(20.0, 1.0);
    FrontendConfig base;
    base.seed = 2026;

    SECTION("zero noise is exact")
    {
        const std::array<double, 1> sigmas{0.0};
        const auto r = noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 3);
        REQUIRE(r.size() == 1);
        CHECK(r[0].rms_error < 1e-10);
    }

    SECTION("error grows with sigma")
    {
        const std::array<double, 3> sigmas{0.001, 0.01, 0.1};
        const auto r = noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 200);
        REQUIRE(r.size() == 3);
        CHECK(r[0].rms_error < r[1].rms_error);
        CHECK(r[1].rms_error < r[2].rms_error);
    }

    SECTION("small-noise linearity")
    {
        const std::array<double, 4> sigmas{0.00625, 0.0125, 0.025, 0.05};
        const auto r = noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 200);
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
        {
            const double ratio = r[i + 1].rms_error / r[i].rms_error;
            CHECK(ratio >= 1.6);
            CHECK(ratio <= 2.4);
        }
    }

    SECTION("deterministic")
    {
        const std::array<double, 2> sigmas{0.01, 0.02};
        const auto a = noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 20);
        const auto b = noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 20);
        CHECK(a[0].rms_error == b[0].rms_error);
        CHECK(a[1].rms_error == b[1].rms_error);
    }

    SECTION("zero trials")
    {
        const std::array<double, 1> sigmas{0.01};
        CHECK_THROWS_AS(noise_sweep(s.e_o, s.ref, s.geom, base, sigmas, 0), DomainError);
    }
}
