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

#include "rasense/array_model.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace rasense;
using testing::deg;

TEST_SUITE("array_model")
{
    TEST_CASE("rotation schedule matches the boresight formula")
    {
        const auto s7 = rotation_angles(7, deg(60));
        const double expect7[] = {-60, -40, -20, 0, 20, 40, 60};
        REQUIRE(s7.m_rotations() == 7);
        for (int m = 0; m < 7; ++m)
            CHECK(s7.angle(m) == doctest::Approx(deg(expect7[m])).epsilon(1e-14));

        const auto s2 = rotation_angles(2, deg(45));
        CHECK(s2.angle(0) == doctest::Approx(-deg(45)));
        CHECK(s2.angle(1) == doctest::Approx(deg(45)));

        const auto s3 = rotation_angles(3, deg(60));
        CHECK(s3.angle(0) == doctest::Approx(-deg(60)));
        CHECK(s3.angle(1) == 0.0);
        CHECK(s3.angle(2) == doctest::Approx(deg(60)));
    }

    TEST_CASE("rotation schedule is symmetric under reversal and negation")
    {
        testing::Gen g(11);
        for (int it = 0; it < 200; ++it)
        {
            const int m = g.integer(2, 40);
            const auto s = rotation_angles(m, g.uniform(1e-3, pi / 2 - 1e-3));
            for (int i = 0; i < m; ++i)
                CHECK(s.angle(i) == -s.angle(m - 1 - i));
            CHECK(std::is_sorted(s.angles().begin(), s.angles().end()));
        }
    }

    TEST_CASE("invalid schedules are rejected")
    {
        CHECK_THROWS_AS(rotation_angles(1, deg(60)), std::invalid_argument);
        CHECK_THROWS_AS(rotation_angles(0, deg(60)), std::invalid_argument);
        CHECK_THROWS_AS(rotation_angles(7, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(rotation_angles(7, pi / 2), std::invalid_argument);
        CHECK_THROWS_AS(rotation_angles(7, -0.1), std::invalid_argument);
    }

    TEST_CASE("invalid geometry and pattern are rejected")
    {
        CHECK_THROWS_AS(ArrayGeometry(1, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(ArrayGeometry(8, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(ArrayGeometry(8, 2.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(GainPattern(-1.0), std::invalid_argument);
        CHECK_NOTHROW(ArrayGeometry(8, 1.5));
    }

    TEST_CASE("gain examples")
    {
        const GainPattern p3(3.0);
        CHECK(p3.peak_gain() == 14.0);
        CHECK(gain(0.3, 0.3, p3) == 14.0);
        CHECK(gain(pi / 2, 0.0, p3) == 0.0);
        CHECK(gain(0.0, pi / 2, GainPattern(1.0)) == 0.0);
        CHECK(gain(deg(60), 0.0, p3) == doctest::Approx(0.21875).epsilon(1e-13));
        CHECK(gain(2.0, 0.0, p3) == 0.0);
    }

    TEST_CASE("gain bounds, symmetry and independent oracle")
    {
        testing::Gen g(12);
        for (int it = 0; it < 5000; ++it)
        {
            const double p = g.uniform(0.0, 10.0);
            const double th = g.uniform(-pi, pi), ph = g.uniform(-pi, pi);
            const GainPattern pat(p);
            const double v = gain(th, ph, pat);
            CHECK(v >= 0.0);
            CHECK(v <= pat.peak_gain());
            CHECK(v == gain(ph, th, pat));
            CHECK(v == doctest::Approx(testing::gain_oracle(th, ph, p)).epsilon(1e-12));
            if (th != ph && std::abs(th - ph) <= pi / 2)
                CHECK(v < pat.peak_gain());
        }
    }

    TEST_CASE("steering vector examples")
    {
        const cvec a0 = steering_vector(0.0, ArrayGeometry(5, 3.0));
        for (int n = 0; n < 5; ++n)
            CHECK(a0(n) == cdouble(1.0, 0.0));

        const cvec a = steering_vector(deg(30), ArrayGeometry(2, 2.0, 0.5));
        CHECK(std::abs(a(0) - cdouble(1, 0)) < 1e-15);
        CHECK(std::abs(a(1) - cdouble(-1, 0)) < 1e-15);

        const cvec b = steering_vector(deg(30), ArrayGeometry(2, 1.0, 0.5));
        CHECK(std::abs(b(1) - cdouble(0, 1)) < 1e-15);

        CHECK_THROWS_AS(steering_vector(pi / 2, ArrayGeometry(4, 1.0)), std::invalid_argument);
    }

    TEST_CASE("steering vector entries are unit modulus and match the oracle")
    {
        testing::Gen g(13);
        for (int it = 0; it < 500; ++it)
        {
            const int n = g.integer(2, 32);
            const double l = g.uniform(1.0, 5.0), d = g.uniform(0.1, 1.0);
            const double th = g.uniform(-1.5, 1.5);
            const cvec a = steering_vector(th, ArrayGeometry(n, l, d));
            REQUIRE(a.size() == n);
            CHECK(a.squaredNorm() == doctest::Approx(static_cast<double>(n)).epsilon(1e-13));
            for (int i = 0; i < n; ++i)
            {
                CHECK(std::abs(a(i)) == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(std::abs(a(i) - testing::steering_oracle(th, i, l, d)) < 1e-10);
            }
        }
    }

    TEST_CASE("gain steering vector examples")
    {
        const auto sched = rotation_angles(7, deg(60));
        const GainPattern pat(3.0);
        const rvec at_phi = gain_steering_vector(sched.angle(2), sched, pat);
        CHECK(at_phi(2) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));

        const rvec b0 = gain_steering_vector(0.0, sched, pat);
        for (int m = 0; m < 7; ++m)
            CHECK(b0(m) == doctest::Approx(b0(6 - m)).epsilon(1e-14));

        const rvec b15 = gain_steering_vector(deg(15), sched, pat);
        const double phis[] = {-60, -40, -20, 0, 20, 40, 60};
        for (int m = 0; m < 7; ++m)
            CHECK(b15(m) == doctest::Approx(std::sqrt(testing::gain_oracle(deg(15), deg(phis[m]), 3.0))).epsilon(1e-12));

        CHECK_THROWS_AS(gain_steering_vector(deg(61), sched, pat), std::invalid_argument);
    }

    TEST_CASE("gain steering vector never vanishes inside the sensing range")
    {
        testing::Gen g(14);
        for (int it = 0; it < 2000; ++it)
        {
            const int m = g.integer(2, 12);
            const double tmax = g.uniform(0.05, pi / 2 - 0.01);
            const auto sched = rotation_angles(m, tmax);
            const GainPattern pat(g.uniform(0.0, 12.0));
            const double th = g.integer(0, 9) == 0 ? (g.integer(0, 1) ? tmax : -tmax) : g.uniform(-tmax, tmax);
            CHECK(gain_steering_vector(th, sched, pat).norm() > 0.0);
        }
    }

    TEST_CASE("channel matrix examples")
    {
        const ArrayGeometry geo(8, 2.0);
        const auto sched = rotation_angles(7, deg(60));
        const GainPattern pat(3.0);

        const Scene one{{Target{sched.angle(3)}}, 0.0};
        const cmat h = channel_matrix(one, 3, geo, sched, pat);
        const cvec expect = std::sqrt(14.0) * steering_vector(sched.angle(3), geo);
        CHECK((h.col(0) - expect).norm() < 1e-13);

        Scene zero{{Target{deg(-20)}, Target{deg(15), {0.0, 0.0}}}, 0.0};
        CHECK(channel_matrix(zero, 1, geo, sched, pat).col(1).norm() == 0.0);

        CHECK_THROWS_AS(channel_matrix(one, 7, geo, sched, pat), std::out_of_range);
        CHECK_THROWS_AS(channel_matrix(one, -1, geo, sched, pat), std::out_of_range);
    }

    TEST_CASE("channel matrix equals the triple-loop composition of scalar oracles")
    {
        testing::Gen g(15);
        for (int it = 0; it < 300; ++it)
        {
            const int n = g.integer(2, 4), m = g.integer(2, 4), k = g.integer(1, 4);
            const double l = g.uniform(1.0, 3.0), p = g.uniform(0.5, 6.0);
            const double tmax = deg(60);
            const ArrayGeometry geo(n, l);
            const auto sched = rotation_angles(m, tmax);
            Scene sc;
            for (int i = 0; i < k; ++i)
                sc.targets.push_back(Target{g.uniform(-tmax, tmax), g.cnormal(), 1.0});
            const int r = g.integer(0, m - 1);
            const cmat h = channel_matrix(sc, r, geo, sched, GainPattern(p));
            const double phi = -tmax + 2.0 * r * tmax / (m - 1);
            for (int row = 0; row < n; ++row)
                for (int col = 0; col < k; ++col)
                {
                    const Target &t = sc.targets[static_cast<std::size_t>(col)];
                    const cdouble expect = testing::steering_oracle(t.doa, row, l, 0.5) *
                                           std::sqrt(testing::gain_oracle(t.doa, phi, p)) * t.scattering;
                    CHECK(std::abs(h(row, col) - expect) < 1e-11);
                }
        }
    }

    TEST_CASE("default channel at rotation 4 matches the scalar oracles")
    {
        const ArrayGeometry geo(8, 2.0);
        const auto sched = rotation_angles(7, deg(60));
        const Scene sc{{Target{deg(-20)}, Target{deg(15)}, Target{deg(45)}}, 0.0};
        const cmat h = channel_matrix(sc, 3, geo, sched, GainPattern(3.0));
        for (int n = 0; n < 8; ++n)
            for (int k = 0; k < 3; ++k)
            {
                const double th = sc.targets[static_cast<std::size_t>(k)].doa;
                const cdouble expect = testing::steering_oracle(th, n, 2.0, 0.5) * std::sqrt(testing::gain_oracle(th, 0.0, 3.0));
                CHECK(std::abs(h(n, k) - expect) < 1e-12);
            }
    }
}
