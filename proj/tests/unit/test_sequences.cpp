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

#include "m2pn/sequences.hpp"
#include "oracles.hpp"
#include "unit/generators.hpp"

#include <doctest.h>

using namespace m2pn;

namespace {
const auto kStd = Prob2Norm::standard(2);
const std::vector<Point> kZ = {{0, 1}};
} // namespace

TEST_CASE("convergence examples") {
    const auto seq = SequenceRule::affine({0, 0}, {1, 0}, 100);
    const auto v = converges_to(kStd, seq, {0, 0}, kZ, 1.0, 0.1);
    CHECK(v.found);
    CHECK(v.n0 == 9);
    CHECK(v.certificate == doctest::Approx(10.0 / 11).epsilon(1e-14));

    const auto constant = SequenceRule::affine({3, 4}, {0, 0}, 20);
    CHECK(converges_to(kStd, constant, {3, 4}, kZ, 1.0, 0.1).n0 == 1);

    const auto offset = SequenceRule::from_list(std::vector<Point>(30, Point{1, 0}));
    const auto ex = converges_to(kStd, offset, {0, 0}, kZ, 1.0, 0.5);
    CHECK_FALSE(ex.found);
    CHECK(ex.n0 == 30);

    CHECK_THROWS(converges_to(kStd, seq, {0, 0}, {}, 1.0, 0.1));
    CHECK_THROWS(converges_to(kStd, seq, {0, 0}, kZ, 0.0, 0.1));
    CHECK_THROWS(converges_to(kStd, seq, {0, 0}, kZ, 1.0, 1.0));
}

TEST_CASE("closed-form n0 on random affine fixtures") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        // u = (k, 0), z = (0, 1): area of x_n - x against z is k / n.
        const int k = gen::integer(rng, 1, 12);
        const int tn = gen::integer(rng, 1, 8);
        const int td = gen::integer(rng, 1, 4);
        const int an = gen::integer(rng, 1, 9); // alpha = an / 10
        const double t = static_cast<double>(tn) / td;
        const double alpha = an / 10.0;
        const Point x{gen::uniform(rng, -3, 3), 0.5};
        const auto seq = SequenceRule::affine(x, {double(k), 0}, 400);
        const auto v = converges_to(kStd, seq, x, kZ, t, alpha);
        // eps = t alpha / (1 - alpha) = (tn an) / (td (10 - an)).
        const auto want = oracle::affine_n0(k, 1, tn * an, td * (10 - an), 400);
        INFO("k=" << k << " t=" << t << " alpha=" << alpha);
        CHECK(v.n0 == want);
    }
}

TEST_CASE("Cauchy probes") {
    const auto seq = SequenceRule::affine({0, 0}, {1, 0}, 60);
    const auto v = is_cauchy(kStd, seq, kZ, 1.0, 0.1);
    CHECK(v.found);
    CHECK(v.n0 >= 1);
    const auto constant = SequenceRule::affine({1, 1}, {0, 0}, 10);
    CHECK(is_cauchy(kStd, constant, kZ, 1.0, 0.1).n0 == 1);
    std::vector<Point> alt;
    for (int n = 1; n <= 40; ++n)
        alt.push_back(Point{n % 2 ? -1.0 : 1.0, 0.0});
    CHECK_FALSE(is_cauchy(kStd, SequenceRule::from_list(alt), kZ, 1.0, 0.1).found);
}

TEST_CASE("the area and ratio criteria agree") {
    const auto conv = norm_equivalence(SequenceRule::affine({0, 0}, {1, 0}, 100), {0, 0}, kZ,
                                          0.1, 1.0);
    CHECK(conv.agree);
    CHECK(conv.witnesses[0].by_area.n0 == 9);
    CHECK(conv.witnesses[0].by_nu.n0 == 9);

    const auto fixed = norm_equivalence(
        SequenceRule::from_list(std::vector<Point>(50, Point{1, 0})), {0, 0}, kZ, 0.1, 1.0);
    CHECK(fixed.agree);
    CHECK_FALSE(fixed.witnesses[0].by_nu.found);

    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const Point u{gen::uniform(rng, -5, 5), gen::uniform(rng, -5, 5)};
        const Point x{gen::uniform(rng, -5, 5), gen::uniform(rng, -5, 5)};
        const std::vector<Point> ws = {{gen::uniform(rng, -3, 3), gen::uniform(rng, -3, 3)},
                                       {1, 0}};
        const auto rep = norm_equivalence(SequenceRule::affine(x, u, 200), x, ws,
                                             gen::uniform(rng, 0.05, 0.5), 1.0);
        REQUIRE(rep.agree);
    }
}

TEST_CASE("series weights") {
    const std::vector<Point> pts = {{1, 0}, {0, 1}};
    const auto g = ConvexSeries::geometric(pts, 30);
    CHECK(g.tail_mass(1) == 1.0);
    CHECK(g.tail_weight(2, 3) == 0.375);
    CHECK(g.head_weight(1) == 0.5);
    for (std::size_t n = 1; n < 30; ++n)
        CHECK(g.head_weight(n) + g.tail_mass(n + 1) == 1.0);
    CHECK_THROWS(g.tail_weight(3, 2));
    CHECK_THROWS(g.partial_sum(31));

    const auto tail = g.renormalized_tail(2);
    CHECK(tail.weight(1) == 0.5);
    CHECK(tail.point(1) == Point{0, 1});
    CHECK(tail.tail_mass(1) == 1.0);
    const auto same = g.renormalized_tail(1);
    CHECK(same.partial_sum(10) == g.partial_sum(10));

    const auto w = ConvexSeries::weighted({0.5, 0.5}, pts);
    const auto w2 = w.renormalized_tail(2);
    CHECK(w2.weight(1) == 1.0);
    CHECK(w2.horizon() == 1);
    CHECK_THROWS_AS(ConvexSeries::weighted({1.0, 0.0}, pts, 3).renormalized_tail(2),
                    std::domain_error);
    const auto scaled = ConvexSeries::weighted({2, 6}, pts);
    CHECK(scaled.weight(1) == 0.25);
    CHECK_THROWS(ConvexSeries::weighted({-1, 2}, pts));
}

TEST_CASE("chain inequality") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        std::vector<Point> pts;
        const int k = gen::integer(rng, 1, 5);
        for (int j = 0; j < k; ++j) {
            const double a = gen::uniform(rng, 0, 6.283);
            const double r = gen::uniform(rng, 0, 1);
            pts.push_back(Point{r * std::cos(a), r * std::sin(a)});
        }
        const auto s = ConvexSeries::geometric(pts, 20);
        const std::size_t n = gen::integer(rng, 1, 10);
        const std::size_t m = n + gen::integer(rng, 0, 9);
        const Point z{gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2)};
        const auto c = chain_inequality_check(kStd, s, n, m, gen::uniform(rng, 0.01, 10), z);
        REQUIRE(c.holds);
        if (n == m)
            REQUIRE(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
    }
    const auto dep = ConvexSeries::geometric({{1, 0}}, 10);
    const auto c = chain_inequality_check(kStd, dep, 2, 5, 1.0, {2, 0});
    CHECK(c.lhs == 1.0);
    CHECK(c.rhs == 1.0);
}

TEST_CASE("series limits") {
    const std::vector<Point> one = {{2, 3}};
    const auto single = convex_series_converges(kStd, ConvexSeries::geometric(one, 30),
                                                kZ, 1.0, 0.1);
    CHECK(single.cauchy.found);
    CHECK(euclidean_norm(single.normalized_estimate - Point{2, 3}) < 1e-12);

    const Point p{1, 0}, q{0, 1};
    const auto mix = convex_series_converges(kStd, ConvexSeries::geometric({p, q}, 30),
                                             std::vector<Point>{{1, 1}}, 1.0, 0.1);
    CHECK(mix.cauchy.found);
    // Odd terms on p carry 2/3 of the mass, even terms on q carry 1/3.
    const Point exact = (2.0 / 3.0) * p + (1.0 / 3.0) * q;
    CHECK(euclidean_norm(mix.limit_estimate - exact) <= 1e-9 + mix.tail_mass * 1.0);

    const auto first = convex_series_converges(kStd, ConvexSeries::weighted({1}, one), kZ, 1.0, 0.1);
    CHECK(first.cauchy.found);
    CHECK(first.cauchy.n0 == 1);
    CHECK(first.limit_estimate == Point{2, 3});
}

TEST_CASE("hull distances") {
    const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(hull_distance(square, {0.5, 0.5}).distance < 1e-9);
    CHECK(hull_distance(square, {2, 0.5}).distance == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hull_distance(square, {-3, -4}).distance == doctest::Approx(5.0).epsilon(1e-9));
    const auto h = hull_distance(square, {0.25, 0.75});
    double s = 0;
    for (double c : h.coefficients) {
        CHECK(c >= 0.0);
        s += c;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<Point> seg = {{0, 0, 0}, {2, 2, 2}};
    CHECK(hull_distance(seg, {1, 1, 1}).distance < 1e-9);
    CHECK(hull_distance(seg, {1, 1, 2}).distance > 0.5);
}

TEST_CASE("closed probes") {
    const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto rep = convex_series_closed_probe(kStd, square, ConvexSeries::geometric(square, 30),
                                                std::vector<Point>{{1, 2}}, 1.0, 0.1);
    CHECK(rep.status == ProbeStatus::Inside);
    CHECK(rep.passed());

    const std::vector<Point> dot = {{3, 1}};
    const auto single = convex_series_closed_probe(kStd, dot, ConvexSeries::geometric(dot, 30),
                                                   kZ, 1.0, 0.1);
    CHECK(single.status == ProbeStatus::Inside);

    const std::vector<Point> seg = {{0, 0}, {4, 2}};
    const auto s = convex_series_closed_probe(kStd, seg, ConvexSeries::geometric(seg, 30),
                                              std::vector<Point>{{0, 1}}, 1.0, 0.1);
    CHECK(s.status == ProbeStatus::Inside);
    CHECK(s.distance <= 1e-9);

    CHECK_THROWS_AS(convex_series_closed_probe(kStd, seg,
                                               ConvexSeries::geometric({{9, 9}}, 10), kZ, 1, 0.1),
                    PreconditionViolation);

    const auto short_run = convex_series_closed_probe(
        kStd, square, ConvexSeries::geometric(square, 3), std::vector<Point>{{1, 2}}, 1.0, 0.01);
    CHECK(short_run.status == ProbeStatus::NotConverged);
    CHECK(short_run.passed());
}
