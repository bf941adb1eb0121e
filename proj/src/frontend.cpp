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

#include "his/frontend.hpp"
#include "his/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace his
{
    void FrontendConfig::validate() const
    {
        auto non_negative = [](double v) { return v >= 0.0 && std::isfinite(v); };
        if (!non_negative(divider_sigma) || !non_negative(awgn_sigma) || !non_negative(detector_noise_sigma))
            throw DomainError("FrontendConfig: noise sigmas must be finite and >= 0");
        if (phase_shifter_bits && (*phase_shifter_bits < 1 || *phase_shifter_bits > 52))
            throw DomainError("FrontendConfig: phase_shifter_bits must lie in [1, 52]");
        if (adc_bits && (*adc_bits < 1 || *adc_bits > 52))
            throw DomainError("FrontendConfig: adc_bits must lie in [1, 52]");
        if (adc_full_scale && !(*adc_full_scale > 0.0 && std::isfinite(*adc_full_scale)))
            throw DomainError("FrontendConfig: adc_full_scale must be > 0");
    }

    double auto_full_scale(double reference_amplitude, double object_amplitude)
    {
        const double peak = reference_amplitude + object_amplitude;
        return 1.25 * peak * peak;
    }

    double quantize_phase(double phase, std::optional<int> bits)
    {
        if (!std::isfinite(phase))
            throw DomainError("quantize_phase: phase must be finite");
        const double two_pi = 2.0 * pi;
        double wrapped = std::fmod(phase, two_pi);
        if (wrapped < 0.0)
            wrapped += two_pi;
        if (wrapped >= two_pi)
            wrapped = 0.0;
        if (!bits)
            return wrapped;
        if (*bits < 1 || *bits > 52)
            throw DomainError("quantize_phase: bits must lie in [1, 52]");

        const double levels = std::ldexp(1.0, *bits);
        const double step = two_pi / levels;
        const double n = wrapped / step;
        double k = std::floor(n);
        if (n - k > 0.5)
            k += 1.0;
        if (k >= levels)
            k = 0.0;
        return k * step;
    }

    double adc_quantize(double power, int bits, double full_scale)
    {
        const double levels = std::ldexp(1.0, bits);
        const double step = full_scale / levels;
        const double code = std::clamp(std::floor(power / step), 0.0, levels - 1.0);
        return (code + 0.5) * step;
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) noexcept
    {
        auto mix = [](std::uint64_t z) {
            z += 0x9E3779B97F4A7C15ULL;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        };
        return mix(mix(mix(base) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
    }

    AcquisitionRecord acquire(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom,
                              const FrontendConfig &cfg)
    {
        cfg.validate();
        ref.validate();
        if (!(e_o.shape == geom.shape()))
            throw DimensionError("acquire: object field does not match the array geometry");

        const std::size_t n = geom.n_units();
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> unit_normal(0.0, 1.0);

        AcquisitionRecord rec;
        rec.truth = e_o;
        rec.config_used = cfg;
        rec.seed_state = cfg.seed;
        rec.triplet.shape = geom.shape();

        // Static divider imbalance shared by all three states
        ReferenceWave distributed = ref;
        if (cfg.divider_sigma > 0.0)
        {
            if (distributed.per_unit_gain.empty())
                distributed.per_unit_gain.assign(n, cplx(1.0, 0.0));
            if (distributed.per_unit_gain.size() != n)
                throw DimensionError("acquire: per_unit_gain does not match the array geometry");
            const double s = cfg.divider_sigma / std::sqrt(2.0);
            for (auto &g : distributed.per_unit_gain)
            {
                const double re = unit_normal(rng);
                const double im = unit_normal(rng);
                g *= cplx(1.0 + s * re, s * im);
            }
        }

        if (cfg.adc_full_scale)
            rec.full_scale = *cfg.adc_full_scale;
        else if (cfg.adc_bits)
        {
            double a_o = 0.0;
            for (const auto &v : e_o.values)
                a_o = std::max(a_o, std::abs(v));
            rec.full_scale = auto_full_scale(ref.amplitude, a_o);
        }

        const double awgn_component = cfg.awgn_sigma / std::sqrt(2.0);
        FieldSnapshot noisy = e_o;
        for (std::size_t k = 0; k < psi_phase_offsets.size(); ++k)
        {
            double phase = ref.global_phase + psi_phase_offsets[k];
            if (cfg.phase_shifter_bits)
                phase = quantize_phase(phase, cfg.phase_shifter_bits);
            const auto e_r = reference_field(distributed.with_phase(phase), geom);

            if (cfg.awgn_sigma > 0.0)
                for (std::size_t u = 0; u < n; ++u)
                {
                    const double re = unit_normal(rng);
                    const double im = unit_normal(rng);
                    noisy[u] = e_o[u] + awgn_component * cplx(re, im);
                }

            auto power = form_hologram(noisy, e_r);
            for (auto &p : power)
            {
                if (cfg.detector_noise_sigma > 0.0)
                    p += cfg.detector_noise_sigma * unit_normal(rng);

                const double upper = rec.full_scale.value_or(HUGE_VAL);
                if (p < 0.0 || p > upper)
                {
                    ++rec.clipped;
                    p = std::clamp(p, 0.0, upper);
                }
                if (cfg.adc_bits)
                    p = adc_quantize(p, *cfg.adc_bits, *rec.full_scale);
            }
            rec.triplet.state(k) = std::move(power);
        }
        return rec;
    }

    double rms_field_error(const FieldSnapshot &estimate, const FieldSnapshot &truth)
    {
        if (!(estimate.shape == truth.shape) || estimate.size() != truth.size())
            throw DimensionError("rms_field_error: snapshot shapes differ");
        if (truth.size() == 0)
            return 0.0;
        double acc = 0.0;
        for (std::size_t k = 0; k < truth.size(); ++k)
            acc += std::norm(estimate[k] - truth[k]);
        return std::sqrt(acc / static_cast<double>(truth.size()));
    }

    std::vector<NoisePoint> noise_sweep(const FieldSnapshot &e_o, const ReferenceWave &ref, const ArrayGeometry &geom,
                                        const FrontendConfig &base_cfg, std::span<const double> sigma_list,
                                        std::size_t trials)
    {
        if (trials < 1)
            throw DomainError("noise_sweep: trials must be >= 1");

        std::vector<NoisePoint> out;
        out.reserve(sigma_list.size());
        for (const double sigma : sigma_list)
        {
            FrontendConfig cfg = base_cfg;
            cfg.awgn_sigma = sigma;
            double acc = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                cfg.seed = derive_seed(base_cfg.seed, t);
                const auto rec = acquire(e_o, ref, geom, cfg);
                acc += rms_field_error(psi_recover(rec.triplet, ref), e_o);
            }
            out.push_back({sigma, acc / static_cast<double>(trials)});
        }
        return out;
    }
}
