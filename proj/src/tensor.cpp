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

#include "rasense/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rasense
{
    namespace
    {
        void check_dims(TensorDims dims)
        {
            if (dims.n < 1 || dims.m < 1 || dims.t < 1)
                throw std::invalid_argument("tensor dims must be positive");
        }

        void check_mode(int mode)
        {
            if (mode < 1 || mode > 3)
                throw std::invalid_argument("unfold: mode must be 1, 2 or 3, got " + std::to_string(mode));
        }

        // (row, column) of element (n, m, t) in the given unfolding.
        std::pair<Eigen::Index, Eigen::Index> unfolding_position(int mode, TensorDims d, int n, int m, int t)
        {
            switch (mode)
            {
            case 1:
                return {n, static_cast<Eigen::Index>(t) * d.m + m};
            case 2:
                return {m, static_cast<Eigen::Index>(t) * d.n + n};
            default:
                return {t, static_cast<Eigen::Index>(m) * d.n + n};
            }
        }

        std::pair<Eigen::Index, Eigen::Index> unfolding_shape(int mode, TensorDims d)
        {
            switch (mode)
            {
            case 1:
                return {d.n, static_cast<Eigen::Index>(d.m) * d.t};
            case 2:
                return {d.m, static_cast<Eigen::Index>(d.n) * d.t};
            default:
                return {d.t, static_cast<Eigen::Index>(d.m) * d.n};
            }
        }
    } // namespace

    ComplexTensor3::ComplexTensor3(TensorDims dims) : dims_(dims)
    {
        check_dims(dims);
        data_.assign(dims.size(), cdouble{0.0, 0.0});
    }

    ComplexTensor3::ComplexTensor3(TensorDims dims, std::vector<cdouble> data)
        : dims_(dims), data_(std::move(data))
    {
        check_dims(dims);
        if (data_.size() != dims.size())
            throw std::invalid_argument("ComplexTensor3: data size does not match dims");
    }

    cmat ComplexTensor3::stacked() const
    {
        return Eigen::Map<const cmat>(data_.data(), static_cast<Eigen::Index>(dims_.n) * dims_.m, dims_.t);
    }

    double ComplexTensor3::frobenius_norm() const
    {
        double acc = 0.0;
        for (const auto &v : data_)
            acc += std::norm(v);
        return std::sqrt(acc);
    }

    bool ComplexTensor3::all_finite() const
    {
        for (const auto &v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                return false;
        return true;
    }

    cmat unfold(const ComplexTensor3 &tensor, int mode)
    {
        check_mode(mode);
        const TensorDims d = tensor.dims();
        if (mode == 3)
            return tensor.stacked().transpose();

        const auto [rows, cols] = unfolding_shape(mode, d);
        cmat out(rows, cols);
        for (int t = 0; t < d.t; ++t)
            for (int m = 0; m < d.m; ++m)
                for (int n = 0; n < d.n; ++n)
                {
                    const auto [r, c] = unfolding_position(mode, d, n, m, t);
                    out(r, c) = tensor(n, m, t);
                }
        return out;
    }

    ComplexTensor3 fold(const cmat &unfolded, int mode, TensorDims dims)
    {
        check_mode(mode);
        check_dims(dims);
        const auto [rows, cols] = unfolding_shape(mode, dims);
        if (unfolded.rows() != rows || unfolded.cols() != cols)
            throw std::invalid_argument("fold: matrix shape does not match dims for mode " + std::to_string(mode));

        std::vector<cdouble> data(dims.size());
        std::size_t idx = 0;
        for (int t = 0; t < dims.t; ++t)
            for (int m = 0; m < dims.m; ++m)
                for (int n = 0; n < dims.n; ++n)
                {
                    const auto [r, c] = unfolding_position(mode, dims, n, m, t);
                    data[idx++] = unfolded(r, c);
                }
        return ComplexTensor3(dims, std::move(data));
    }

    cmat khatri_rao(const cmat &x, const cmat &y)
    {
        if (x.cols() != y.cols())
            throw std::invalid_argument("khatri_rao: column counts differ (" + std::to_string(x.cols()) + " vs " +
                                        std::to_string(y.cols()) + ")");
        const Eigen::Index i_rows = x.rows(), j_rows = y.rows();
        cmat out(i_rows * j_rows, x.cols());
        for (Eigen::Index k = 0; k < x.cols(); ++k)
            for (Eigen::Index i = 0; i < i_rows; ++i)
                out.col(k).segment(i * j_rows, j_rows) = x(i, k) * y.col(k);
        return out;
    }

    cvec kronecker_vec(const cvec &x, const cvec &y)
    {
        cvec out(x.size() * y.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out.segment(i * y.size(), y.size()) = x(i) * y;
        return out;
    }

    ComplexTensor3 reconstruct(const CpFactors &f, TensorDims dims)
    {
        check_dims(dims);
        const Eigen::Index k = f.array_factor.cols();
        if (f.array_factor.rows() != dims.n || f.gain_factor.rows() != dims.m || f.signal_factor.rows() != dims.t ||
            f.gain_factor.cols() != k || f.signal_factor.cols() != k)
            throw std::invalid_argument("reconstruct: factor shapes do not match dims");

        // Stacked form: Y = (B kr A) S^T, MN x T.
        const cmat stacked = khatri_rao(f.gain_factor, f.array_factor) * f.signal_factor.transpose();
        return ComplexTensor3(dims, std::vector<cdouble>(stacked.data(), stacked.data() + stacked.size()));
    }

} // namespace rasense
