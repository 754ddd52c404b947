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

#ifndef RASENSE_KERNELS_HPP
#define RASENSE_KERNELS_HPP

// Grid-evaluation kernels. Each OpenMP kernel has a serial reference with identical
// per-point arithmetic; tests require the two to agree bit for bit.

#include "rasense/types.hpp"

namespace rasense::kernels
{
    // Joint correlation spectrum of estimated columns (a_hat, b_hat) against dictionaries
    // array_dict (N x G, unit-modulus entries) and gain_dict (M x G, unit-norm columns).
    rvec joint_spectrum(const cvec &a_hat, const cvec &b_hat, const cmat &array_dict, const rmat &gain_dict);
    rvec joint_spectrum_serial(const cvec &a_hat, const cvec &b_hat, const cmat &array_dict, const rmat &gain_dict);

    // MUSIC pseudo-spectrum 1 / ||E_n^H a(x)||^2 for noise subspace E_n (N x (N - K)).
    rvec music_spectrum(const cmat &noise_subspace, const cmat &array_dict);
    rvec music_spectrum_serial(const cmat &noise_subspace, const cmat &array_dict);

} // namespace rasense::kernels

#endif
