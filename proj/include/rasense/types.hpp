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

#ifndef RASENSE_TYPES_HPP
#define RASENSE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace rasense
{
    using cdouble = std::complex<double>;
    using cmat = Eigen::MatrixXcd;
    using cvec = Eigen::VectorXcd;
    using rmat = Eigen::MatrixXd;
    using rvec = Eigen::VectorXd;

    inline constexpr double pi = std::numbers::pi;

    constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
    constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

} // namespace rasense

#endif
