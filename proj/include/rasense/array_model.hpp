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

#ifndef RASENSE_ARRAY_MODEL_HPP
#define RASENSE_ARRAY_MODEL_HPP

#include "rasense/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rasense
{
    // Uniform linear array with inter-element spacing sparse_factor * spacing_wavelengths * lambda.
    // sparse_factor == 1 is the dense array; real-valued factors are accepted, but grating-lobe
    // predictions assume the sin(x) = sin(t) + z / (L * d/lambda) lobe family.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(int n_antennas, double sparse_factor, double spacing_wavelengths = 0.5);

        int n_antennas() const { return n_; }
        double sparse_factor() const { return sparse_; }
        double spacing_wavelengths() const { return spacing_; }

        // Phase increment between adjacent elements per unit of sin(theta), in radians.
        double phase_scale() const { return 2.0 * pi * spacing_ * sparse_; }

        // Same geometry with L replaced; used for the dense (L = 1) counterparts of a configuration.
        ArrayGeometry with_sparse_factor(double sparse_factor) const;

    private:
        int n_;
        double sparse_;
        double spacing_;
    };

    // Boresight angles phi_m = -theta_max + 2 m theta_max / (M - 1), m = 0..M-1.
    class RotationSchedule
    {
    public:
        RotationSchedule(int m_rotations, double theta_max);

        int m_rotations() const { return static_cast<int>(angles_.size()); }
        double theta_max() const { return theta_max_; }
        const std::vector<double> &angles() const { return angles_; }
        double angle(int m) const { return angles_[static_cast<std::size_t>(m)]; }

    private:
        double theta_max_;
        std::vector<double> angles_;
    };

    // Directional power pattern G cos^{2p}(theta - phi) on the front half-space, G = 2(2p + 1).
    class GainPattern
    {
    public:
        explicit GainPattern(double directivity);

        double directivity() const { return p_; }
        double peak_gain() const { return 2.0 * (2.0 * p_ + 1.0); }

    private:
        double p_;
    };

    struct Target
    {
        double doa;                 // radians
        cdouble scattering{1.0, 0.0};
        double signal_power = 1.0;
    };

    struct Scene
    {
        std::vector<Target> targets;
        double noise_power = 0.0;

        int k_targets() const { return static_cast<int>(targets.size()); }
        std::vector<double> doas() const;
    };

    RotationSchedule rotation_angles(int m_rotations, double theta_max);

    double gain(double theta, double phi, const GainPattern &pattern);

    // a(theta): entries exp(j * phase_scale * n * sin(theta)), n = 0..N-1.
    cvec steering_vector(double theta, const ArrayGeometry &geometry);

    // b(theta): entries sqrt(gain(theta, phi_m)), m = 0..M-1.
    rvec gain_steering_vector(double theta, const RotationSchedule &schedule, const GainPattern &pattern);

    // Column-stacked a(theta_k), N x K.
    cmat array_manifold(std::span<const double> thetas, const ArrayGeometry &geometry);

    // Column-stacked b(theta_k), M x K.
    rmat gain_manifold(std::span<const double> thetas, const RotationSchedule &schedule, const GainPattern &pattern);

    // H_m = A diag(b_m) diag(alpha), N x K. rotation_index is zero-based.
    cmat channel_matrix(const Scene &scene, int rotation_index, const ArrayGeometry &geometry,
                        const RotationSchedule &schedule, const GainPattern &pattern);

} // namespace rasense

#endif
