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

#include "rasense/array_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rasense
{
    namespace
    {
        // Grid endpoints computed in floating point may overshoot theta_max by a few ulps.
        constexpr double range_slack = 1e-9;
    }

    ArrayGeometry::ArrayGeometry(int n_antennas, double sparse_factor, double spacing_wavelengths)
        : n_(n_antennas), sparse_(sparse_factor), spacing_(spacing_wavelengths)
    {
        if (n_antennas < 2)
            throw std::invalid_argument("ArrayGeometry: n_antennas must be >= 2, got " + std::to_string(n_antennas));
        if (!(sparse_factor >= 1.0) || !std::isfinite(sparse_factor))
            throw std::invalid_argument("ArrayGeometry: sparse_factor must be >= 1");
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw std::invalid_argument("ArrayGeometry: spacing_wavelengths must be > 0");
    }

    ArrayGeometry ArrayGeometry::with_sparse_factor(double sparse_factor) const
    {
        return ArrayGeometry(n_, sparse_factor, spacing_);
    }

    RotationSchedule::RotationSchedule(int m_rotations, double theta_max)
        : theta_max_(theta_max)
    {
        if (m_rotations < 2)
            throw std::invalid_argument("RotationSchedule: m_rotations must be >= 2 (the gain correlation "
                                        "has a unique maximum only for M >= 2), got " +
                                        std::to_string(m_rotations));
        if (!(theta_max > 0.0) || !(theta_max < pi / 2.0))
            throw std::invalid_argument("RotationSchedule: theta_max must lie in (0, pi/2)");

        angles_.resize(static_cast<std::size_t>(m_rotations));
        const double step = 2.0 * theta_max / static_cast<double>(m_rotations - 1);
        // Fill the lower half and mirror so the schedule is exactly antisymmetric.
        for (int m = 0; m < (m_rotations + 1) / 2; ++m)
        {
            const double phi = (2 * m + 1 == m_rotations) ? 0.0 : -theta_max + step * static_cast<double>(m);
            angles_[static_cast<std::size_t>(m)] = phi;
            angles_[static_cast<std::size_t>(m_rotations - 1 - m)] = -phi;
        }
        angles_.front() = -theta_max;
        angles_.back() = theta_max;
    }

    GainPattern::GainPattern(double directivity) : p_(directivity)
    {
        if (!(directivity >= 0.0) || !std::isfinite(directivity))
            throw std::invalid_argument("GainPattern: directivity must be finite and >= 0");
    }

    std::vector<double> Scene::doas() const
    {
        std::vector<double> out;
        out.reserve(targets.size());
        for (const auto &t : targets)
            out.push_back(t.doa);
        return out;
    }

    RotationSchedule rotation_angles(int m_rotations, double theta_max)
    {
        return RotationSchedule(m_rotations, theta_max);
    }

    double gain(double theta, double phi, const GainPattern &pattern)
    {
        const double offset = std::abs(theta - phi);
        const double p = pattern.directivity();
        if (offset > pi / 2.0 || (p > 0.0 && offset == pi / 2.0))
            return 0.0;
        const double c = std::max(std::cos(offset), 0.0);
        return pattern.peak_gain() * std::pow(c, 2.0 * p);
    }

    cvec steering_vector(double theta, const ArrayGeometry &geometry)
    {
        if (!(std::abs(theta) < pi / 2.0))
            throw std::invalid_argument("steering_vector: |theta| must be < pi/2");
        const int n = geometry.n_antennas();
        const double psi = geometry.phase_scale() * std::sin(theta);
        cvec a(n);
        for (int i = 0; i < n; ++i)
            a(i) = std::polar(1.0, psi * static_cast<double>(i));
        return a;
    }

    rvec gain_steering_vector(double theta, const RotationSchedule &schedule, const GainPattern &pattern)
    {
        if (std::abs(theta) > schedule.theta_max() + range_slack)
            throw std::invalid_argument("gain_steering_vector: |theta| exceeds theta_max");
        const int m = schedule.m_rotations();
        rvec b(m);
        for (int i = 0; i < m; ++i)
            b(i) = std::sqrt(gain(theta, schedule.angle(i), pattern));
        if (!(b.squaredNorm() > 0.0))
            throw std::domain_error("gain_steering_vector: zero gain across all rotations");
        return b;
    }

    cmat array_manifold(std::span<const double> thetas, const ArrayGeometry &geometry)
    {
        cmat a(geometry.n_antennas(), static_cast<Eigen::Index>(thetas.size()));
        for (std::size_t k = 0; k < thetas.size(); ++k)
            a.col(static_cast<Eigen::Index>(k)) = steering_vector(thetas[k], geometry);
        return a;
    }

    rmat gain_manifold(std::span<const double> thetas, const RotationSchedule &schedule, const GainPattern &pattern)
    {
        rmat b(schedule.m_rotations(), static_cast<Eigen::Index>(thetas.size()));
        for (std::size_t k = 0; k < thetas.size(); ++k)
            b.col(static_cast<Eigen::Index>(k)) = gain_steering_vector(thetas[k], schedule, pattern);
        return b;
    }

    cmat channel_matrix(const Scene &scene, int rotation_index, const ArrayGeometry &geometry,
                        const RotationSchedule &schedule, const GainPattern &pattern)
    {
        if (rotation_index < 0 || rotation_index >= schedule.m_rotations())
            throw std::out_of_range("channel_matrix: rotation_index out of range");
        const int k_targets = scene.k_targets();
        cmat h(geometry.n_antennas(), k_targets);
        const double phi = schedule.angle(rotation_index);
        for (int k = 0; k < k_targets; ++k)
        {
            const auto &t = scene.targets[static_cast<std::size_t>(k)];
            const double b = std::sqrt(gain(t.doa, phi, pattern));
            h.col(k) = (t.scattering * b) * steering_vector(t.doa, geometry);
        }
        return h;
    }

} // namespace rasense
