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

#ifndef RASENSE_MUSIC_HPP
#define RASENSE_MUSIC_HPP

#include "rasense/doa.hpp"
#include "rasense/tensor.hpp"

#include <vector>

namespace rasense
{
    struct CovarianceEstimate
    {
        cmat matrix; // N x N, Hermitian
        int snapshot_count = 0;
    };

    // (1/Q) Y Y^H, symmetrized.
    CovarianceEstimate sample_covariance(const cmat &snapshots);

    // Eigenvectors of the N - K smallest eigenvalues (ascending order), N x (N - K).
    cmat noise_subspace(const CovarianceEstimate &cov, int k_sources);

    // Pseudo-spectrum 1 / (a^H E_n E_n^H a) over the grid, omnidirectional elements.
    rvec music_spectrum(const CovarianceEstimate &cov, int k_sources, const ArrayGeometry &geometry,
                        const AngularGrid &grid);

    // Grid indices of local maxima (three-point comparison; endpoints compare to their single
    // neighbour; plateaus report their leftmost point).
    std::vector<std::size_t> local_maxima(const rvec &spectrum);

    class MusicSearch
    {
    public:
        MusicSearch(const ArrayGeometry &geometry, const AngularGrid &grid);

        const ArrayGeometry &geometry() const { return geometry_; }
        const AngularGrid &grid() const { return grid_; }

        rvec spectrum(const CovarianceEstimate &cov, int k_sources) const;

        // K largest local maxima sorted by angle, parabolically refined. Missing peaks are
        // padded from the global spectrum ordering and flagged low-confidence.
        DoaEstimate estimate(const CovarianceEstimate &cov, int k_sources, bool keep_spectrum = false) const;

    private:
        ArrayGeometry geometry_;
        AngularGrid grid_;
        cmat array_dict_;
    };

    // Aggregates the tensor to N x MT snapshots and runs MUSIC.
    DoaEstimate music_estimate(const ComplexTensor3 &tensor, int k_sources, const ArrayGeometry &geometry,
                               const AngularGrid &grid);

} // namespace rasense

#endif
