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

#include "rasense/doa.hpp"

#include "rasense/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rasense
{
    namespace
    {
        constexpr double range_slack = 1e-9;
    }

    AngularGrid::AngularGrid(double lo, double hi, double resolution)
        : lo_(lo), hi_(hi), resolution_(resolution)
    {
        if (!(resolution > 0.0) || !std::isfinite(resolution))
            throw std::invalid_argument("AngularGrid: resolution must be > 0");
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("AngularGrid: requires lo < hi");

        const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / resolution - 1e-9));
        const std::size_t count = std::max<std::size_t>(intervals, 1) + 1;
        step_ = (hi - lo) / static_cast<double>(count - 1);
        points_.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            points_[i] = lo + step_ * static_cast<double>(i);
        points_.back() = hi;
    }

    std::size_t AngularGrid::nearest_index(double theta) const
    {
        const double pos = std::round((theta - lo_) / step_);
        if (pos <= 0.0)
            return 0;
        return std::min(static_cast<std::size_t>(pos), points_.size() - 1);
    }

    AngularGrid sensing_grid(const RotationSchedule &schedule, double resolution)
    {
        return AngularGrid(-schedule.theta_max(), schedule.theta_max(), resolution);
    }

    double array_svc(double theta_k, double theta, const ArrayGeometry &geometry)
    {
        const double n = geometry.n_antennas();
        const double psi = geometry.phase_scale() * (std::sin(theta) - std::sin(theta_k));
        // sin^2(N x / 2) / sin^2(x / 2) is 2 pi periodic; reducing first keeps both factors
        // relatively accurate near the removable singularities.
        const double reduced = std::remainder(psi, 2.0 * pi);
        const double den = std::sin(0.5 * reduced);
        if (den == 0.0)
            return 1.0;
        const double num = std::sin(0.5 * n * reduced);
        return std::clamp((num * num) / (n * n * den * den), 0.0, 1.0);
    }

    double array_svc_direct(double theta_k, double theta, const ArrayGeometry &geometry)
    {
        const cvec ak = steering_vector(theta_k, geometry);
        const cvec a = steering_vector(theta, geometry);
        return std::norm(ak.dot(a)) / (ak.squaredNorm() * a.squaredNorm());
    }

    double gain_svc(double theta_k, double theta, const RotationSchedule &schedule, const GainPattern &pattern)
    {
        const rvec bk = gain_steering_vector(theta_k, schedule, pattern);
        const rvec b = gain_steering_vector(theta, schedule, pattern);
        const double ip = bk.dot(b);
        return (ip * ip) / (bk.squaredNorm() * b.squaredNorm());
    }

    double joint_svc(double theta_k, double theta, const ArrayGeometry &geometry, const RotationSchedule &schedule,
                     const GainPattern &pattern)
    {
        return array_svc(theta_k, theta, geometry) * gain_svc(theta_k, theta, schedule, pattern);
    }

    double joint_svc_kronecker(double theta_k, double theta, const ArrayGeometry &geometry,
                               const RotationSchedule &schedule, const GainPattern &pattern)
    {
        const cvec ck = kronecker_vec(steering_vector(theta_k, geometry),
                                      gain_steering_vector(theta_k, schedule, pattern).cast<cdouble>());
        const cvec c = kronecker_vec(steering_vector(theta, geometry),
                                     gain_steering_vector(theta, schedule, pattern).cast<cdouble>());
        return std::norm(ck.dot(c)) / (ck.squaredNorm() * c.squaredNorm());
    }

    std::vector<GratingLobe> grating_lobe_angles(double theta_k, const ArrayGeometry &geometry, double lo, double hi)
    {
        if (!(std::abs(theta_k) < pi / 2.0))
            throw std::invalid_argument("grating_lobe_angles: |theta_k| must be < pi/2");
        if (!(lo <= hi))
            throw std::invalid_argument("grating_lobe_angles: requires lo <= hi");

        // Period of sin(x) over which the steering vector repeats.
        const double period = 2.0 * pi / geometry.phase_scale();
        const double sk = std::sin(theta_k);
        const double s_lo = std::max(-1.0, std::sin(std::max(lo, -pi / 2.0)));
        const double s_hi = std::min(1.0, std::sin(std::min(hi, pi / 2.0)));

        const auto z_min = static_cast<int>(std::ceil((s_lo - sk) / period - 1e-12));
        const auto z_max = static_cast<int>(std::floor((s_hi - sk) / period + 1e-12));

        std::vector<GratingLobe> lobes;
        for (int z = z_min; z <= z_max; ++z)
        {
            const double angle = z == 0 ? theta_k : std::asin(std::clamp(sk + z * period, -1.0, 1.0));
            if (angle >= lo - range_slack && angle <= hi + range_slack)
                lobes.push_back({angle, z});
        }
        std::sort(lobes.begin(), lobes.end(), [](const auto &x, const auto &y) { return x.angle < y.angle; });
        return lobes;
    }

    bool DoaEstimate::any_low_confidence() const
    {
        return std::any_of(low_confidence.begin(), low_confidence.end(), [](bool b) { return b; });
    }

    bool spectrum_is_flat(const rvec &spectrum)
    {
        if (spectrum.size() == 0)
            return true;
        std::vector<double> v(spectrum.data(), spectrum.data() + spectrum.size());
        auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
        std::nth_element(v.begin(), mid, v.end());
        return spectrum.maxCoeff() - *mid < flat_spectrum_floor;
    }

    PeakPick refine_peak(const AngularGrid &grid, const rvec &spectrum, std::size_t index)
    {
        const auto &pts = grid.points();
        PeakPick pick{pts[index], spectrum(static_cast<Eigen::Index>(index)), index};
        if (index == 0 || index + 1 >= pts.size())
            return pick;

        const auto i = static_cast<Eigen::Index>(index);
        const double left = spectrum(i - 1), mid = spectrum(i), right = spectrum(i + 1);
        const double curvature = left - 2.0 * mid + right;
        if (curvature < 0.0)
        {
            const double offset = std::clamp(0.5 * (left - right) / curvature, -1.0, 1.0);
            pick.angle = pts[index] + offset * grid.step();
        }
        return pick;
    }

    PeakPick grid_argmax(const AngularGrid &grid, const rvec &spectrum)
    {
        if (static_cast<std::size_t>(spectrum.size()) != grid.size() || grid.size() == 0)
            throw std::invalid_argument("grid_argmax: spectrum length does not match grid");
        std::size_t best = 0;
        for (std::size_t g = 1; g < grid.size(); ++g)
            if (spectrum(static_cast<Eigen::Index>(g)) > spectrum(static_cast<Eigen::Index>(best)))
                best = g;
        return refine_peak(grid, spectrum, best);
    }

    JointSearch::JointSearch(const ArrayGeometry &geometry, const RotationSchedule &schedule,
                             const GainPattern &pattern, const AngularGrid &grid)
        : grid_(grid)
    {
        if (grid.lo() < -schedule.theta_max() - range_slack || grid.hi() > schedule.theta_max() + range_slack)
            throw std::invalid_argument("JointSearch: grid must lie within [-theta_max, theta_max]");
        const auto &pts = grid.points();
        array_dict_ = array_manifold(pts, geometry);
        gain_dict_ = gain_manifold(pts, schedule, pattern);
        gain_dict_.colwise().normalize();
    }

    rvec JointSearch::spectrum(const cvec &a_hat, const cvec &b_hat) const
    {
        if (a_hat.size() != array_dict_.rows() || b_hat.size() != gain_dict_.rows())
            throw std::invalid_argument("JointSearch: factor column length does not match the configuration");
        return kernels::joint_spectrum(a_hat, b_hat, array_dict_, gain_dict_);
    }

    rvec JointSearch::array_spectrum(const cvec &a_hat) const
    {
        if (a_hat.size() != array_dict_.rows())
            throw std::invalid_argument("JointSearch: factor column length does not match the configuration");
        const double denom = a_hat.squaredNorm() * static_cast<double>(array_dict_.rows());
        if (denom == 0.0)
            return rvec::Zero(array_dict_.cols());
        return (array_dict_.adjoint() * a_hat).cwiseAbs2() / denom;
    }

    rvec JointSearch::gain_spectrum(const cvec &b_hat) const
    {
        if (b_hat.size() != gain_dict_.rows())
            throw std::invalid_argument("JointSearch: factor column length does not match the configuration");
        const double denom = b_hat.squaredNorm();
        if (denom == 0.0)
            return rvec::Zero(gain_dict_.cols());
        return (gain_dict_.cast<cdouble>().transpose() * b_hat).cwiseAbs2() / denom;
    }

    DoaEstimate JointSearch::estimate(const CpFactors &factors, bool keep_spectra) const
    {
        const Eigen::Index k_targets = factors.rank();
        if (factors.gain_factor.cols() != k_targets)
            throw std::invalid_argument("JointSearch: factor column counts differ");

        std::vector<PeakPick> picks;
        std::vector<bool> flat;
        const Eigen::Index g_count = static_cast<Eigen::Index>(grid_.size());
        rmat spectra(k_targets, g_count), array_part(k_targets, g_count), gain_part(k_targets, g_count);
        for (Eigen::Index k = 0; k < k_targets; ++k)
        {
            const rvec spec = spectrum(factors.array_factor.col(k), factors.gain_factor.col(k));
            picks.push_back(grid_argmax(grid_, spec));
            flat.push_back(spectrum_is_flat(spec));
            if (keep_spectra)
            {
                spectra.row(k) = spec.transpose();
                array_part.row(k) = array_spectrum(factors.array_factor.col(k)).transpose();
                gain_part.row(k) = gain_spectrum(factors.gain_factor.col(k)).transpose();
            }
        }

        std::vector<std::size_t> order(picks.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return picks[x].angle < picks[y].angle; });

        DoaEstimate est;
        const Eigen::Index kept = keep_spectra ? k_targets : 0;
        rmat sorted_spectra(kept, g_count), sorted_array(kept, g_count), sorted_gain(kept, g_count);
        for (std::size_t r = 0; r < order.size(); ++r)
        {
            const std::size_t k = order[r];
            est.angles.push_back(picks[k].angle);
            est.peak_scores.push_back(picks[k].score);
            est.low_confidence.push_back(flat[k]);
            if (keep_spectra)
            {
                const auto dst = static_cast<Eigen::Index>(r), src = static_cast<Eigen::Index>(k);
                sorted_spectra.row(dst) = spectra.row(src);
                sorted_array.row(dst) = array_part.row(src);
                sorted_gain.row(dst) = gain_part.row(src);
            }
        }
        if (keep_spectra)
        {
            est.spectra = std::move(sorted_spectra);
            est.array_spectra = std::move(sorted_array);
            est.gain_spectra = std::move(sorted_gain);
        }
        return est;
    }

    DoaEstimate estimate_doas(const CpFactors &factors, const ArrayGeometry &geometry,
                              const RotationSchedule &schedule, const GainPattern &pattern, const AngularGrid &grid,
                              bool keep_spectra)
    {
        return JointSearch(geometry, schedule, pattern, grid).estimate(factors, keep_spectra);
    }

} // namespace rasense
