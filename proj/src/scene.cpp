// SPDX-License-Identifier: Apache-2.0
//
// rasense: rotatable-antenna sparse-array DOA estimation via tensor decomposition
// Copyright (C) 2026 The rasense authors
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

#include "rasense/scene.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace rasense
{
    namespace
    {
        constexpr std::uint32_t signal_stream = 0;
        constexpr std::uint32_t noise_stream = 1;

        std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
            return std::mt19937_64(seq);
        }

        // Circularly-symmetric CN(0, power) sample.
        cdouble complex_gaussian(std::mt19937_64 &rng, double power)
        {
            std::normal_distribution<double> gauss(0.0, 1.0);
            const double scale = std::sqrt(0.5 * power);
            const double re = gauss(rng);
            const double im = gauss(rng);
            return {scale * re, scale * im};
        }

        cmat draw_signals_from(const Scene &scene, int snapshots, std::mt19937_64 &rng)
        {
            const int k_targets = scene.k_targets();
            cmat s(k_targets, snapshots);
            for (int k = 0; k < k_targets; ++k)
            {
                const double power = scene.targets[static_cast<std::size_t>(k)].signal_power;
                for (int t = 0; t < snapshots; ++t)
                    s(k, t) = complex_gaussian(rng, power);
            }
            return s;
        }

        // gains: M x K real amplitudes b_{m,k}.
        ComplexTensor3 synthesize_with_gains(const Scene &scene, const cmat &steering, const rmat &gains,
                                             const SimulationConfig &config)
        {
            if (config.snapshots < 1)
                throw std::invalid_argument("synthesize: snapshots must be >= 1");
            if (!(scene.noise_power >= 0.0))
                throw std::invalid_argument("synthesize: noise_power must be >= 0");

            const int n = static_cast<int>(steering.rows());
            const int m_rot = static_cast<int>(gains.rows());
            const int t_snap = config.snapshots;
            const int k_targets = scene.k_targets();

            cvec alpha(k_targets);
            for (int k = 0; k < k_targets; ++k)
                alpha(k) = scene.targets[static_cast<std::size_t>(k)].scattering;

            auto signal_rng = make_stream(config.seed, signal_stream);
            auto noise_rng = make_stream(config.seed, noise_stream);
            cmat signals = draw_signals_from(scene, t_snap, signal_rng);

            const TensorDims dims{n, m_rot, t_snap};
            std::vector<cdouble> data(dims.size());
            for (int m = 0; m < m_rot; ++m)
            {
                if (config.fresh_signals_per_rotation && m > 0)
                    signals = draw_signals_from(scene, t_snap, signal_rng);

                cmat h = steering;
                for (int k = 0; k < k_targets; ++k)
                    h.col(k) *= alpha(k) * gains(m, k);
                const cmat block = h * signals; // N x T

                for (int t = 0; t < t_snap; ++t)
                    for (int i = 0; i < n; ++i)
                    {
                        cdouble v = block(i, t);
                        if (scene.noise_power > 0.0)
                            v += complex_gaussian(noise_rng, scene.noise_power);
                        data[static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (m + static_cast<std::size_t>(m_rot) * t)] = v;
                    }
            }
            return ComplexTensor3(dims, std::move(data));
        }
    } // namespace

    void validate_scene(const Scene &scene, const RotationSchedule &schedule)
    {
        if (scene.targets.empty())
            throw std::invalid_argument("scene: at least one target is required");
        if (!(scene.noise_power >= 0.0) || !std::isfinite(scene.noise_power))
            throw std::invalid_argument("scene: noise_power must be finite and >= 0");
        const double limit = schedule.theta_max() + 1e-12;
        for (std::size_t i = 0; i < scene.targets.size(); ++i)
        {
            const auto &t = scene.targets[i];
            if (!(std::abs(t.doa) <= limit))
                throw std::invalid_argument("scene: target DOA outside the sensing range [-theta_max, theta_max]");
            if (!(t.signal_power >= 0.0))
                throw std::invalid_argument("scene: signal_power must be >= 0");
            for (std::size_t j = 0; j < i; ++j)
                if (scene.targets[j].doa == t.doa)
                    throw std::invalid_argument("scene: target DOAs must be pairwise distinct");
        }
    }

    cmat draw_signals(const Scene &scene, const SimulationConfig &config)
    {
        if (config.snapshots < 1)
            throw std::invalid_argument("draw_signals: snapshots must be >= 1");
        auto rng = make_stream(config.seed, signal_stream);
        return draw_signals_from(scene, config.snapshots, rng);
    }

    ComplexTensor3 synthesize(const Scene &scene, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                              const GainPattern &pattern, const SimulationConfig &config)
    {
        validate_scene(scene, schedule);
        const auto doas = scene.doas();
        return synthesize_with_gains(scene, array_manifold(doas, geometry), gain_manifold(doas, schedule, pattern),
                                     config);
    }

    ComplexTensor3 synthesize_omnidirectional(const Scene &scene, const ArrayGeometry &geometry, int m_rotations,
                                              const SimulationConfig &config)
    {
        if (m_rotations < 1)
            throw std::invalid_argument("synthesize_omnidirectional: m_rotations must be >= 1");
        const auto doas = scene.doas();
        return synthesize_with_gains(scene, array_manifold(doas, geometry),
                                     rmat::Ones(m_rotations, scene.k_targets()), config);
    }

    CpFactors ground_truth_factors(const Scene &scene, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                                   const GainPattern &pattern, const SimulationConfig &config)
    {
        const auto doas = scene.doas();
        const cmat signals = draw_signals(scene, config);
        cmat s_t = signals.transpose(); // T x K
        for (int k = 0; k < scene.k_targets(); ++k)
            s_t.col(k) *= scene.targets[static_cast<std::size_t>(k)].scattering;
        return {array_manifold(doas, geometry), gain_manifold(doas, schedule, pattern).cast<cdouble>(), s_t};
    }

    cmat aggregate_snapshots(const ComplexTensor3 &tensor)
    {
        const TensorDims d = tensor.dims();
        cmat out(d.n, static_cast<Eigen::Index>(d.m) * d.t);
        for (int m = 0; m < d.m; ++m)
            for (int t = 0; t < d.t; ++t)
                for (int n = 0; n < d.n; ++n)
                    out(n, static_cast<Eigen::Index>(m) * d.t + t) = tensor(n, m, t);
        return out;
    }

    double noise_power_for_snr(double snr_db, double signal_power)
    {
        return signal_power / std::pow(10.0, snr_db / 10.0);
    }

} // namespace rasense
