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

#include "rasense/cp_als.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace rasense
{
    namespace
    {
        struct Unfoldings
        {
            cmat y1, y2, y3;
        };

        cmat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng)
        {
            std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
            cmat out(rows, cols);
            for (Eigen::Index j = 0; j < cols; ++j)
                for (Eigen::Index i = 0; i < rows; ++i)
                {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    out(i, j) = {re, im};
                }
            return out;
        }

        cmat leading_left_singular(const cmat &unfolding, int rank, std::mt19937_64 &rng)
        {
            Eigen::BDCSVD<cmat> svd(unfolding, Eigen::ComputeThinU);
            const cmat &u = svd.matrixU();
            cmat out = random_complex(unfolding.rows(), rank, rng);
            const Eigen::Index usable = std::min<Eigen::Index>(rank, u.cols());
            out.leftCols(usable) = u.leftCols(usable);
            return out;
        }

        // Solves min_X ||Y - X KR^T||_F through the ridge-regularized normal equations
        // (KR^H KR + lambda I) X^T = KR^H Y^T. Returns true when the Gram matrix was singular.
        bool solve_factor(const cmat &unfolding, const cmat &kr, double ridge, cmat &factor)
        {
            const Eigen::Index k = kr.cols();
            cmat gram = kr.adjoint() * kr;
            const double trace = gram.diagonal().real().sum();
            if (!(trace > 0.0) || !std::isfinite(trace))
            {
                factor.setZero(unfolding.rows(), k);
                return true;
            }

            Eigen::SelfAdjointEigenSolver<cmat> eig(gram, Eigen::EigenvaluesOnly);
            const auto &ev = eig.eigenvalues();
            const bool singular = ev(0) <= 1e-12 * ev(k - 1);

            gram.diagonal().array() += ridge * trace / static_cast<double>(k);
            const cmat rhs = kr.adjoint() * unfolding.transpose();
            factor = gram.ldlt().solve(rhs).transpose();
            return singular;
        }

        // Unit-norm columns in A and B; scale moves into S. Does not change the model.
        void balance_columns(CpFactors &f)
        {
            for (Eigen::Index k = 0; k < f.rank(); ++k)
            {
                const double na = f.array_factor.col(k).norm();
                const double nb = f.gain_factor.col(k).norm();
                if (na > 0.0 && nb > 0.0)
                {
                    f.array_factor.col(k) /= na;
                    f.gain_factor.col(k) /= nb;
                    f.signal_factor.col(k) *= na * nb;
                }
            }
        }

        // balance_columns plus a deterministic phase: first nonzero entry of each A column real >= 0.
        void normalize_columns(CpFactors &f)
        {
            balance_columns(f);
            for (Eigen::Index k = 0; k < f.rank(); ++k)
            {
                auto a = f.array_factor.col(k);
                for (Eigen::Index i = 0; i < a.size(); ++i)
                {
                    if (std::abs(a(i)) > 0.0)
                    {
                        const cdouble phase = a(i) / std::abs(a(i));
                        a /= phase;
                        f.signal_factor.col(k) *= phase;
                        a(i) = std::abs(a(i));
                        break;
                    }
                }
            }
        }

        double residual_from_mode3(const cmat &y3, const CpFactors &f, double norm_y)
        {
            const cmat model = f.signal_factor * khatri_rao(f.gain_factor, f.array_factor).transpose();
            return (y3 - model).norm() / norm_y;
        }

        struct RunOutcome
        {
            CpFactors factors;
            AlsReport report;
        };

        RunOutcome run_als(const Unfoldings &y, double norm_y, CpFactors f, const AlsOptions &opt)
        {
            RunOutcome out;
            auto &rep = out.report;
            rep.fit_history.reserve(static_cast<std::size_t>(opt.max_iter));
            double prev = std::numeric_limits<double>::infinity();

            for (int it = 1; it <= opt.max_iter; ++it)
            {
                bool singular = solve_factor(y.y1, khatri_rao(f.signal_factor, f.gain_factor), opt.ridge, f.array_factor);
                singular |= solve_factor(y.y2, khatri_rao(f.signal_factor, f.array_factor), opt.ridge, f.gain_factor);
                singular |= solve_factor(y.y3, khatri_rao(f.gain_factor, f.array_factor), opt.ridge, f.signal_factor);
                balance_columns(f);
                rep.rank_deficient |= singular;

                const double fit = residual_from_mode3(y.y3, f, norm_y);
                rep.fit_history.push_back(fit);
                rep.iterations = it;
                rep.final_fit = fit;

                if (!std::isfinite(fit))
                    break;
                if (fit < opt.fit_floor ||
                    std::abs(prev - fit) / std::max(prev, std::numeric_limits<double>::epsilon()) < opt.tol)
                {
                    rep.converged = true;
                    break;
                }
                prev = fit;
            }
            out.factors = std::move(f);
            return out;
        }
    } // namespace

    double relative_residual(const ComplexTensor3 &tensor, const CpFactors &factors)
    {
        const double norm_y = tensor.frobenius_norm();
        const double diff = (tensor.stacked() - reconstruct(factors, tensor.dims()).stacked()).norm();
        return norm_y > 0.0 ? diff / norm_y : diff;
    }

    bool fit_history_monotone(const std::vector<double> &history, double slack)
    {
        for (std::size_t i = 1; i < history.size(); ++i)
            if (history[i] > history[i - 1] + slack)
                return false;
        return true;
    }

    std::pair<CpFactors, AlsReport> cp_als(const ComplexTensor3 &tensor, int rank, const AlsOptions &options)
    {
        const TensorDims d = tensor.dims();
        if (rank < 1)
            throw std::invalid_argument("cp_als: rank must be >= 1");
        const long max_rank = std::min({static_cast<long>(d.m) * d.t, static_cast<long>(d.n) * d.t,
                                        static_cast<long>(d.n) * d.m});
        if (rank > max_rank)
            throw std::invalid_argument("cp_als: rank exceeds the column count of an unfolding");
        if (options.max_iter < 1)
            throw std::invalid_argument("cp_als: max_iter must be >= 1");
        if (!(options.tol > 0.0))
            throw std::invalid_argument("cp_als: tol must be > 0");
        if (options.restarts < 0)
            throw std::invalid_argument("cp_als: restarts must be >= 0");
        if (!tensor.all_finite())
            throw std::invalid_argument("cp_als: tensor contains non-finite values");

        const double norm_y = tensor.frobenius_norm();
        if (norm_y == 0.0)
        {
            CpFactors zero{cmat::Zero(d.n, rank), cmat::Zero(d.m, rank), cmat::Zero(d.t, rank)};
            AlsReport rep;
            rep.degenerate = true;
            return {std::move(zero), std::move(rep)};
        }

        const Unfoldings y{unfold(tensor, 1), unfold(tensor, 2), unfold(tensor, 3)};

        RunOutcome best;
        bool have_best = false;
        int starts = 0;
        for (int start = 0; start <= options.restarts; ++start)
        {
            std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(start));
            CpFactors init;
            if (start == 0 && options.init == InitStrategy::spectral)
                init = {leading_left_singular(y.y1, rank, rng), leading_left_singular(y.y2, rank, rng),
                        leading_left_singular(y.y3, rank, rng)};
            else
                init = {random_complex(d.n, rank, rng), random_complex(d.m, rank, rng), random_complex(d.t, rank, rng)};

            RunOutcome run = run_als(y, norm_y, std::move(init), options);
            ++starts;
            const bool better = !have_best || (std::isfinite(run.report.final_fit) &&
                                               !(run.report.final_fit >= best.report.final_fit));
            if (better)
            {
                best = std::move(run);
                have_best = true;
            }
            if (best.report.converged)
                break;
        }

        best.report.starts = starts;
        normalize_columns(best.factors);
        return {std::move(best.factors), std::move(best.report)};
    }

} // namespace rasense
