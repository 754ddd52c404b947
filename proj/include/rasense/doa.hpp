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

#ifndef RASENSE_DOA_HPP
#define RASENSE_DOA_HPP

#include "rasense/array_model.hpp"
#include "rasense/tensor.hpp"

#include <optional>
#include <vector>

namespace rasense
{
    // Uniform angle grid covering [lo, hi] with spacing <= resolution; both endpoints included.
    class AngularGrid
    {
    public:
        AngularGrid(double lo, double hi, double resolution);

        double lo() const { return lo_; }
        double hi() const { return hi_; }
        double resolution() const { return resolution_; }
        double step() const { return step_; }
        const std::vector<double> &points() const { return points_; }
        std::size_t size() const { return points_.size(); }

        // Index of the grid point nearest to theta (clamped to the grid).
        std::size_t nearest_index(double theta) const;

    private:
        double lo_, hi_, resolution_, step_;
        std::vector<double> points_;
    };

    // [-theta_max, theta_max] at the given resolution.
    AngularGrid sensing_grid(const RotationSchedule &schedule, double resolution);

    // Normalized squared correlation of array steering vectors, Dirichlet-kernel closed form.
    double array_svc(double theta_k, double theta, const ArrayGeometry &geometry);
    // Same quantity from the explicit inner product of a(theta_k) and a(theta).
    double array_svc_direct(double theta_k, double theta, const ArrayGeometry &geometry);

    double gain_svc(double theta_k, double theta, const RotationSchedule &schedule, const GainPattern &pattern);

    // array_svc * gain_svc.
    double joint_svc(double theta_k, double theta, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                     const GainPattern &pattern);
    // Normalized squared correlation of the combined vectors a(theta) (x) b(theta).
    double joint_svc_kronecker(double theta_k, double theta, const ArrayGeometry &geometry,
                               const RotationSchedule &schedule, const GainPattern &pattern);

    struct GratingLobe
    {
        double angle; // radians
        int order;    // z in sin(x) = sin(theta_k) + z / (L d/lambda); 0 is the true direction

        bool is_true_direction() const { return order == 0; }
    };

    // All angles in [lo, hi] where the array correlation with theta_k reaches 1, sorted ascending.
    std::vector<GratingLobe> grating_lobe_angles(double theta_k, const ArrayGeometry &geometry, double lo, double hi);

    struct DoaEstimate
    {
        std::vector<double> angles;      // radians, ascending
        std::vector<double> peak_scores; // objective value at each estimate
        std::vector<bool> low_confidence;
        // Optional K x |grid| spectra; row i belongs to angles[i].
        std::optional<rmat> spectra;
        // Joint search only: the array and gain correlation factors of each spectra row.
        std::optional<rmat> array_spectra;
        std::optional<rmat> gain_spectra;

        bool any_low_confidence() const;
    };

    // Grid search over precomputed steering dictionaries. Built once per configuration and
    // reused across trials.
    class JointSearch
    {
    public:
        JointSearch(const ArrayGeometry &geometry, const RotationSchedule &schedule, const GainPattern &pattern,
                    const AngularGrid &grid);

        const AngularGrid &grid() const { return grid_; }

        // |a_hat^H a(x)|^2 |b_hat^H b(x)|^2 / (||a_hat||^2 ||a(x)||^2 ||b_hat||^2 ||b(x)||^2) over the grid.
        rvec spectrum(const cvec &a_hat, const cvec &b_hat) const;
        // The two factors of spectrum(): |a_hat^H a(x)|^2 / (||a_hat||^2 N) and the gain analogue.
        rvec array_spectrum(const cvec &a_hat) const;
        rvec gain_spectrum(const cvec &b_hat) const;

        DoaEstimate estimate(const CpFactors &factors, bool keep_spectra = false) const;

    private:
        AngularGrid grid_;
        cmat array_dict_; // N x G
        rmat gain_dict_;  // M x G, unit-norm columns
    };

    DoaEstimate estimate_doas(const CpFactors &factors, const ArrayGeometry &geometry,
                              const RotationSchedule &schedule, const GainPattern &pattern, const AngularGrid &grid,
                              bool keep_spectra = false);

    struct PeakPick
    {
        double angle;
        double score;
        std::size_t index;
    };

    // Argmax of a grid spectrum (ties go to the smaller angle) with three-point parabolic
    // refinement; the refined angle stays within one grid step of the grid maximizer.
    PeakPick refine_peak(const AngularGrid &grid, const rvec &spectrum, std::size_t index);
    PeakPick grid_argmax(const AngularGrid &grid, const rvec &spectrum);

    // max - median below this floor marks a spectrum as flat.
    inline constexpr double flat_spectrum_floor = 1e-12;
    bool spectrum_is_flat(const rvec &spectrum);

} // namespace rasense

#endif
