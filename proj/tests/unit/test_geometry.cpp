/*
 * Copyright 2026 The m2pn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "m2pn/errors.hpp"
#include "m2pn/geometry.hpp"
#include "oracles.hpp"
#include "unit/generators.hpp"

#include <doctest.h>

using namespace m2pn;

TEST_CASE("areas") {
    CHECK(two_norm({1, 0}, {0, 1}) == 1.0);
    CHECK(two_norm({1, 2}, {3, 4}) == 2.0);
    CHECK(two_norm({2, 4}, {1, 2}) == 0.0);
    CHECK(two_norm({1, 0, 0}, {1, 1, 0}) == 1.0);
    CHECK(two_norm(-2.0 * Point{1, 2}, {3, 4}) == 4.0);
    CHECK(numerically_dependent({1, 2}, {3, 6}));
    CHECK_FALSE(numerically_dependent({1, 2}, {3, 4}));
}

TEST_CASE("points validate") {
    CHECK_THROWS_AS(Point({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Point({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(two_norm({1, 0}, {1, 0, 0}), DimensionMismatch);
    CHECK(Point::zero(3).dim() == 3);
}

TEST_CASE("areas agree with the oracles") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 2000; ++i) {
        const auto x2 = gen::int_point(rng, 2, -50, 50);
        const auto y2 = gen::int_point(rng, 2, -50, 50);
        const auto exact = oracle::area2_int(static_cast<std::int64_t>(x2[0]),
                                             static_cast<std::int64_t>(x2[1]),
                                             static_cast<std::int64_t>(y2[0]),
                                             static_cast<std::int64_t>(y2[1]));
        REQUIRE(two_norm(x2, y2) == static_cast<double>(exact));
        REQUIRE(two_norm(x2, y2) == two_norm(y2, x2));

        std::vector<double> a(3), b(3);
        for (int k = 0; k < 3; ++k) {
            a[k] = gen::uniform(rng, -10, 10);
            b[k] = gen::uniform(rng, -10, 10);
        }
        REQUIRE(two_norm(Point(a), Point(b)) ==
                doctest::Approx(oracle::area3(a, b)).epsilon(1e-12));
        REQUIRE(two_norm(Point(a), Point(b)) == two_norm(Point(b), Point(a)));

        std::vector<double> c(5), d(5);
        for (int k = 0; k < 5; ++k) {
            c[k] = gen::uniform(rng, -10, 10);
            d[k] = gen::uniform(rng, -10, 10);
        }
        REQUIRE(two_norm(Point(c), Point(d)) ==
                doctest::Approx(oracle::area_minors(c, d)).epsilon(1e-10));
    }
}

TEST_CASE("axiom suites pass") {
    for (std::size_t dim : {2u, 3u, 4u}) {
        for (const auto& r : check_2norm_axioms(uniform_sampler(dim, -10, 10), 2000)) {
            INFO(r.axiom << " dim " << dim);
            CHECK(r.passed());
            CHECK(r.trials == 2000);
        }
    }
    for (const auto& r : check_2norm_axioms(integer_sampler(2, -5, 5), 2000)) {
        INFO(r.axiom);
        CHECK(r.passed());
    }
    for (const auto& r : check_2norm_axioms_exact(2000)) {
        INFO(r.axiom);
        CHECK(r.passed());
    }
}

TEST_CASE("exact rational areas") {
    const RationalPoint2 x{Rational(1, 3), Rational(2)};
    const RationalPoint2 y{Rational(3), Rational(4, 5)};
    CHECK(two_norm_exact(x, y) == abs(Rational(1, 3) * Rational(4, 5) - Rational(2) * 3));
    CHECK(two_norm_exact(x, Rational(-7, 2) * x) == 0);
    CHECK(two_norm_exact(x, y + Rational(5, 7) * x) == two_norm_exact(x, y));
}
