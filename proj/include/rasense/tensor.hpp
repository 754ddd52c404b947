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

#ifndef RASENSE_TENSOR_HPP
#define RASENSE_TENSOR_HPP

#include "rasense/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace rasense
{
    struct TensorDims
    {
        int n = 0; // antennas
        int m = 0; // rotations
        int t = 0; // snapshots

        std::size_t size() const { return static_cast<std::size_t>(n) * m * t; }
        bool operator==(const TensorDims &) const = default;
    };

    // Complex N x M x T tensor. Element (n, m, t) is stored at n + N (m + M t), which makes the
    // raw storage identical to the MN x T stacked snapshot matrix (row m N + n, column t).
    class ComplexTensor3
    {
    public:
        ComplexTensor3() = default;
        explicit ComplexTensor3(TensorDims dims);
        ComplexTensor3(TensorDims dims, std::vector<cdouble> data);

        const TensorDims &dims() const { return dims_; }
        std::span<const cdouble> data() const { return data_; }

        const cdouble &operator()(int n, int m, int t) const { return data_[index(n, m, t)]; }

        // Stacked MN x T matrix [Y_1; ...; Y_M].
        cmat stacked() const;

        double frobenius_norm() const;
        bool all_finite() const;

    private:
        std::size_t index(int n, int m, int t) const
        {
            return static_cast<std::size_t>(n) + static_cast<std::size_t>(dims_.n) *
                                                     (static_cast<std::size_t>(m) + static_cast<std::size_t>(dims_.m) * t);
        }

        TensorDims dims_{};
        std::vector<cdouble> data_;
    };

    // Factor matrices of a rank-K CP model: array (N x K), gain (M x K), signal (T x K).
    struct CpFactors
    {
        cmat array_factor;
        cmat gain_factor;
        cmat signal_factor;

        Eigen::Index rank() const { return array_factor.cols(); }
    };

    // Mode unfoldings, laid out so that for an exact CP tensor
    //   mode 1: Y1 = A (S kr B)^T   (N x MT, column t M + m)
    //   mode 2: Y2 = B (S kr A)^T   (M x NT, column t N + n)
    //   mode 3: Y3 = S (B kr A)^T   (T x MN, column m N + n)
    cmat unfold(const ComplexTensor3 &tensor, int mode);

    // Inverse of unfold for the given dims.
    ComplexTensor3 fold(const cmat &unfolded, int mode, TensorDims dims);

    // Column-wise Kronecker product: column k is kron(x_k, y_k), shape (I J) x K.
    cmat khatri_rao(const cmat &x, const cmat &y);

    cvec kronecker_vec(const cvec &x, const cvec &y);

    // sum_k a_k o b_k o s_k
    ComplexTensor3 reconstruct(const CpFactors &factors, TensorDims dims);

} // namespace rasense

#endif
