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

#ifndef RASENSE_SCENE_HPP
#define RASENSE_SCENE_HPP

#include "rasense/array_model.hpp"
#include "rasense/tensor.hpp"

#include <cstdint>

namespace rasense
{
    enum class SignalModel
    {
        gaussian,
    };

    struct SimulationConfig
    {
        int snapshots = 20;
        std::uint64_t seed = 0;
        SignalModel signal_model = SignalModel::gaussian;
        // Stress option: draw a new signal realization for every rotation. This breaks the
        // shared-signal rank-K structure and is off by default.
        bool fresh_signals_per_rotation = false;
    };

    // Rejects scenes whose DOAs fall outside [-theta_max, theta_max] or coincide.
    void validate_scene(const Scene &scene, const RotationSchedule &schedule);

    // K x T unit-less probing streams s~(t): independent CN(0, sigma_k^2) rows. Uses its own
    // mt19937_64 stream seeded from config.seed, separate from the noise stream.
    cmat draw_signals(const Scene &scene, const SimulationConfig &config);

    // Received tensor with slice (:, m, :) = A diag(b_m) Lambda S~ + N_m.
    ComplexTensor3 synthesize(const Scene &scene, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                              const GainPattern &pattern, const SimulationConfig &config);

    // Same signal and noise realizations as synthesize, but with unit element gains
    // (omnidirectional antennas). Used by the MUSIC baselines.
    ComplexTensor3 synthesize_omnidirectional(const Scene &scene, const ArrayGeometry &geometry, int m_rotations,
                                              const SimulationConfig &config);

    // Noise-free CP factors of the synthesized tensor: (A, B, S^T) with S = Lambda S~.
    CpFactors ground_truth_factors(const Scene &scene, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                                   const GainPattern &pattern, const SimulationConfig &config);

    // N x MT matrix [Y_1, ..., Y_M]: the per-rotation snapshot blocks side by side.
    cmat aggregate_snapshots(const ComplexTensor3 &tensor);

    // sigma_n^2 = signal_power / 10^(snr_db / 10)
    double noise_power_for_snr(double snr_db, double signal_power = 1.0);

} // namespace rasense

#endif
