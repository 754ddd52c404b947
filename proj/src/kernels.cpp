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

#include "rasense/kernels.hpp"

#include <algorithm>
#include <limits>

namespace rasense::kernels
{
    namespace
    {
        inline double joint_point(const cvec &a_hat, const cvec &b_hat, double scale, const cmat &array_dict,
                                  const rmat &gain_dict, Eigen::Index g)
        {
            cdouble ca{0.0, 0.0};
            for (Eigen::Index i = 0; i < a_hat.size(); ++i)
                ca += std::conj(a_hat(i)) * array_dict(i, g);
            cdouble cb{0.0, 0.0};
            for (Eigen::Index i = 0; i < b_hat.size(); ++i)
                cb += std::conj(b_hat(i)) * gain_dict(i, g);
            return std::norm(ca) * std::norm(cb) * scale;
        }

        inline double music_point(const cmat &en, const cmat &array_dict, Eigen::Index g)
        {
            double denom = 0.0;
            for (Eigen::Index j = 0; j < en.cols(); ++j)
            {
                cdouble v{0.0, 0.0};
                for (Eigen::Index i = 0; i < en.rows(); ++i)
                    v += std::conj(en(i, j)) * array_dict(i, g);
                denom += std::norm(v);
            }
            return 1.0 / std::max(denom, std::numeric_limits<double>::min());
        }

        // 1 / (||a_hat||^2 N ||b_hat||^2), or 0 for an all-zero column.
        double joint_scale(const cvec &a_hat, const cvec &b_hat, const cmat &array_dict)
        {
            const double denom = a_hat.squaredNorm() * static_cast<double>(array_dict.rows()) * b_hat.squaredNorm();
            return denom > 0.0 ? 1.0 / denom : 0.0;
        }
    } // namespace

    rvec joint_spectrum(const cvec &a_hat, const cvec &b_hat, const cmat &array_dict, const rmat &gain_dict)
    {
        const Eigen::Index grid = array_dict.cols();
        const double scale = joint_scale(a_hat, b_hat, array_dict);
        rvec out(grid);
#pragma omp parallel for schedule(static)
        for (Eigen::Index g = 0; g < grid; ++g)
            out(g) = joint_point(a_hat, b_hat, scale, array_dict, gain_dict, g);
        return out;
    }

    rvec joint_spectrum_serial(const cvec &a_hat, const cvec &b_hat, const cmat &array_dict, const rmat &gain_dict)
    {
        const Eigen::Index grid = array_dict.cols();
        const double scale = joint_scale(a_hat, b_hat, array_dict);
        rvec out(grid);
        for (Eigen::Index g = 0; g < grid; ++g)
            out(g) = joint_point(a_hat, b_hat, scale, array_dict, gain_dict, g);
        return out;
    }

    rvec music_spectrum(const cmat &noise_subspace, const cmat &array_dict)
    {
        const Eigen::Index grid = array_dict.cols();
        rvec out(grid);
#pragma omp parallel for schedule(static)
        for (Eigen::Index g = 0; g < grid; ++g)
            out(g) = music_point(noise_subspace, array_dict, g);
        return out;
    }

    rvec music_spectrum_serial(const cmat &noise_subspace, const cmat &array_dict)
    {
        const Eigen::Index grid = array_dict.cols();
        rvec out(grid);
        for (Eigen::Index g = 0; g < grid; ++g)
            out(g) = music_point(noise_subspace, array_dict, g);
        return out;
    }

} // namespace rasense::kernels
