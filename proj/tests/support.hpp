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

#ifndef RASENSE_TESTS_SUPPORT_HPP
#define RASENSE_TESTS_SUPPORT_HPP

// Seeded generators and independent scalar oracles shared by the unit tests.

#include "rasense/types.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace testing
{
    using rasense::cdouble;
    using rasense::cmat;
    using rasense::cvec;

    class Gen
    {
    public:
        explicit Gen(std::uint64_t seed) : rng_(seed) {}

        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
        int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
        double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
        cdouble cnormal() { return {normal() * std::sqrt(0.5), normal() * std::sqrt(0.5)}; }

        cvec cvector(int n)
        {
            cvec v(n);
            for (int i = 0; i < n; ++i)
                v(i) = cnormal();
            return v;
        }
        cmat cmatrix(int r, int c)
        {
            cmat m(r, c);
            for (int j = 0; j < c; ++j)
                for (int i = 0; i < r; ++i)
                    m(i, j) = cnormal();
            return m;
        }
        std::mt19937_64 &engine() { return rng_; }

    private:
        std::mt19937_64 rng_;
    };

    inline double deg(double d) { return d * std::acos(-1.0) / 180.0; }

    // Pattern value written out from the pattern definition, no shared code with the library.
    inline double gain_oracle(double theta, double phi, double p)
    {
        const double d = theta - phi;
        if (std::abs(d) > std::acos(-1.0) / 2.0)
            return 0.0;
        const double c = std::max(0.0, std::cos(d));
        return 2.0 * (2.0 * p + 1.0) * std::pow(c, 2.0 * p);
    }

    inline cdouble steering_oracle(double theta, int n, double sparse, double spacing)
    {
        return std::polar(1.0, 2.0 * std::acos(-1.0) * spacing * sparse * n * std::sin(theta));
    }

    // RMSE in degrees minimized over every assignment of estimates to truths, by enumeration.
    inline double exhaustive_min_rmse_deg(std::vector<double> truth, const std::vector<double> &est)
    {
        std::sort(truth.begin(), truth.end());
        std::vector<std::size_t> perm(est.size());
        std::iota(perm.begin(), perm.end(), 0);
        double best = INFINITY;
        do
        {
            double acc = 0.0;
            for (std::size_t i = 0; i < truth.size(); ++i)
            {
                const double e = (est[perm[i]] - truth[i]) * 180.0 / std::acos(-1.0);
                acc += e * e;
            }
            best = std::min(best, acc);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::sqrt(best / static_cast<double>(truth.size()));
    }

    // |<x, y>| / (||x|| ||y||)
    inline double abs_cosine(const cvec &x, const cvec &y)
    {
        return std::abs(x.dot(y)) / (x.norm() * y.norm());
    }

} // namespace testing

#endif
