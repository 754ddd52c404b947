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

#include "rasense/music.hpp"

#include "rasense/kernels.hpp"
#include "rasense/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rasense
{
    CovarianceEstimate sample_covariance(const cmat &snapshots)
    {
        if (snapshots.cols() < 1)
            throw std::invalid_argument("sample_covariance: at least one snapshot is required");
        const auto q = static_cast<double>(snapshots.cols());
        cmat r = snapshots * snapshots.adjoint() / q;
        r = 0.5 * (r + r.adjoint()).eval();
        return {std::move(r), static_cast<int>(snapshots.cols())};
    }

    cmat noise_subspace(const CovarianceEstimate &cov, int k_sources)
    {
        const auto n = static_cast<int>(cov.matrix.rows());
        if (k_sources < 1 || k_sources >= n)
            throw std::invalid_argument("noise_subspace: k_sources must satisfy 1 <= K < N");
        Eigen::SelfAdjointEigenSolver<cmat> eig(cov.matrix);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("noise_subspace: eigendecomposition failed");
        return eig.eigenvectors().leftCols(n - k_sources);
    }

    rvec music_spectrum(const CovarianceEstimate &cov, int k_sources, const ArrayGeometry &geometry,
                        const AngularGrid &grid)
    {
        return MusicSearch(geometry, grid).spectrum(cov, k_sources);
    }

    std::vector<std::size_t> local_maxima(const rvec &s)
    {
        std::vector<std::size_t> peaks;
        const auto g = static_cast<std::size_t>(s.size());
        if (g == 0)
            return peaks;
        if (g == 1)
            return {0};
        for (std::size_t i = 0; i < g; ++i)
        {
            const auto ii = static_cast<Eigen::Index>(i);
            bool peak;
            if (i == 0)
                peak = s(0) > s(1);
            else if (i + 1 == g)
                peak = s(ii) > s(ii - 1);
            else
                peak = s(ii) > s(ii - 1) && s(ii) >= s(ii + 1);
            if (peak)
                peaks.push_back(i);
        }
        return peaks;
    }

    MusicSearch::MusicSearch(const ArrayGeometry &geometry, const AngularGrid &grid)
        : geometry_(geometry), grid_(grid), array_dict_(array_manifold(grid.points(), geometry))
    {
    }

    rvec MusicSearch::spectrum(const CovarianceEstimate &cov, int k_sources) const
    {
        if (cov.matrix.rows() != geometry_.n_antennas() || cov.matrix.cols() != geometry_.n_antennas())
            throw std::invalid_argument("MusicSearch: covariance size does not match the array");
        return kernels::music_spectrum(noise_subspace(cov, k_sources), array_dict_);
    }

    DoaEstimate MusicSearch::estimate(const CovarianceEstimate &cov, int k_sources, bool keep_spectrum) const
    {
        const rvec spec = spectrum(cov, k_sources);
        const auto k = static_cast<std::size_t>(k_sources);

        auto by_value = [&](std::size_t x, std::size_t y) {
            return spec(static_cast<Eigen::Index>(x)) > spec(static_cast<Eigen::Index>(y));
        };

        std::vector<std::size_t> peaks = local_maxima(spec);
        std::stable_sort(peaks.begin(), peaks.end(), by_value);
        bool padded = false;
        if (peaks.size() < k)
        {
            std::vector<std::size_t> all(grid_.size());
            std::iota(all.begin(), all.end(), 0);
            std::stable_sort(all.begin(), all.end(), by_value);
            for (std::size_t idx : all)
            {
                if (peaks.size() >= k)
                    break;
                if (std::find(peaks.begin(), peaks.end(), idx) == peaks.end())
                    peaks.push_back(idx);
            }
            padded = true;
        }
        peaks.resize(k);
        std::sort(peaks.begin(), peaks.end());

        // The pseudo-spectrum peaks like 1/x; its logarithm is close to parabolic near a maximum.
        const rvec log_spec = spec.array().log();
        const bool flat = spectrum_is_flat(spec);

        DoaEstimate est;
        for (std::size_t idx : peaks)
        {
            const PeakPick pick = refine_peak(grid_, log_spec, idx);
            est.angles.push_back(pick.angle);
            est.peak_scores.push_back(spec(static_cast<Eigen::Index>(idx)));
            est.low_confidence.push_back(padded || flat);
        }
        if (keep_spectrum)
            est.spectra = rmat(spec.transpose());
        return est;
    }

    DoaEstimate music_estimate(const ComplexTensor3 &tensor, int k_sources, const ArrayGeometry &geometry,
                               const AngularGrid &grid)
    {
        if (tensor.dims().n != geometry.n_antennas())
            throw std::invalid_argument("music_estimate: tensor antenna count does not match geometry");
        return MusicSearch(geometry, grid).estimate(sample_covariance(aggregate_snapshots(tensor)), k_sources);
    }

} // namespace rasense
