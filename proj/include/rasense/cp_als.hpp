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

#ifndef RASENSE_CP_ALS_HPP
#define RASENSE_CP_ALS_HPP

#include "rasense/tensor.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rasense
{
    enum class InitStrategy
    {
        random,   // seeded circularly-symmetric complex Gaussian factors
        spectral, // leading left singular vectors of each unfolding
    };

    struct AlsOptions
    {
        int max_iter = 500;
        // Stop when |fit_i - fit_{i+1}| / max(fit_i, eps) < tol.
        double tol = 1e-8;
        // Also stop once the relative residual itself is below this floor (exact tensors).
        double fit_floor = 1e-10;
        // Tikhonov weight relative to trace(Gram) / K.
        double ridge = 1e-12;
        InitStrategy init = InitStrategy::random;
        std::uint64_t seed = 0;
        // Additional random starts tried when a run stops at max_iter; the best fit is kept.
        int restarts = 0;
    };

    struct AlsReport
    {
        int iterations = 0;
        double final_fit = 0.0; // ||Y - [[A, B, S]]||_F / ||Y||_F
        bool converged = false;
        bool rank_deficient = false; // a least-squares Gram matrix was numerically singular
        bool degenerate = false;     // all-zero input tensor
        int starts = 0;              // initializations tried (1 + restarts used)
        std::vector<double> fit_history;
    };

    // Rank-K CP decomposition by alternating least squares, updating A, B, S in that order.
    // Returned columns of A and B have unit norm and each A column's first nonzero entry is
    // real non-negative; magnitude and phase are absorbed into S.
    std::pair<CpFactors, AlsReport> cp_als(const ComplexTensor3 &tensor, int rank, const AlsOptions &options = {});

    // Relative residual of a CP model against a tensor.
    double relative_residual(const ComplexTensor3 &tensor, const CpFactors &factors);

    // Whether a fit history is non-increasing within an absolute slack (fits are relative to ||Y||).
    bool fit_history_monotone(const std::vector<double> &history, double slack = 1e-9);

} // namespace rasense

#endif
