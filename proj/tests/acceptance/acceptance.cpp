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

// One PASS/FAIL line per acceptance criterion. Usage:
//   m2pn_acceptance <path to m2pn CLI> <document for the determinism check>

#include "m2pn/dbound.hpp"
#include "m2pn/geometry.hpp"
#include "m2pn/menger2pn.hpp"
#include "m2pn/sequences.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace m2pn;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool ok;
    std::string detail;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int integer(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Point int_point(std::mt19937_64& rng, int lo, int hi) {
    return Point{double(integer(rng, lo, hi)), double(integer(rng, lo, hi))};
}

FiniteSet random_set(std::mt19937_64& rng, int max_points, int lo, int hi) {
    FiniteSet s;
    const int n = integer(rng, 1, max_points);
    for (int i = 0; i < n; ++i)
        s.points.push_back(int_point(rng, lo, hi));
    return s;
}

std::string failed_axioms(const std::vector<AxiomReport>& reps) {
    std::string out;
    for (const auto& r : reps)
        if (!r.passed())
            out += (out.empty() ? "" : ",") + r.axiom + "(" + std::to_string(r.failure_count) + ")";
    return out;
}

Outcome axiom_suites() {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = geometric_grid(-10, 20);
    std::string bad;
    for (std::size_t dim : {2u, 3u}) {
        for (const auto& space : {Prob2Norm::standard(dim), Prob2Norm::indicator(dim)}) {
            const auto f = failed_axioms(
                check_2pn_axioms(space, uniform_sampler(dim, -10, 10), grid, grid, 10000));
            if (!f.empty())
                bad += std::string(to_string(space.family())) + "/R" + std::to_string(dim) + ":" + f + " ";
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << "tuples=10000 spaces=4 seconds=" << std::fixed;
    d.precision(2);
    d << secs;
    if (!bad.empty())
        d << " failing=" << bad;
    return {bad.empty() && secs < 10.0, d.str()};
}

Outcome norm_suite() {
    const auto sampled = failed_axioms(check_2norm_axioms(uniform_sampler(2, -10, 10), 10000));
    const auto sampled3 = failed_axioms(check_2norm_axioms(uniform_sampler(3, -10, 10), 10000));
    const auto exact = failed_axioms(check_2norm_axioms_exact(10000));
    const bool ok = sampled.empty() && sampled3.empty() && exact.empty();
    return {ok, "samples=10000 exact=10000" +
                    (ok ? std::string() : " failing=" + sampled + ";" + sampled3 + ";" + exact)};
}

Outcome equivalence() {
    std::mt19937_64 rng(2101);
    int disagree = 0;
    for (int i = 0; i < 100; ++i) {
        const Point x{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        const Point u{uniform(rng, -20, 20), uniform(rng, -20, 20)};
        const std::vector<Point> zs{int_point(rng, -4, 4), int_point(rng, -4, 4)};
        const auto seq = SequenceRule::affine(x, u, 200);
        const double alpha = uniform(rng, 0.01, 0.5);
        const double t = uniform(rng, 0.1, 2.0);
        if (!norm_equivalence(seq, x, zs, alpha, t).agree)
            ++disagree;
    }
    // |u, z| = 1: n / (n + 1) > 0.9 first holds past n = 9.
    const Point x{0, 1};
    const std::vector<Point> z{{0, 1}};
    const auto seq = SequenceRule::affine(x, {1, 0}, 100);
    const auto v = converges_to(Prob2Norm::standard(2), seq, x, z, 1.0, 0.1);
    const auto rep = norm_equivalence(seq, x, z, 0.1, 1.0);
    const bool n0_ok = v.found && v.n0 == 9 && rep.agree && rep.witnesses[0].by_area.n0 == 9;
    return {disagree == 0 && n0_ok,
            "fixtures=100 disagreements=" + std::to_string(disagree) + " n0=" + std::to_string(v.n0)};
}

Outcome bound_constants_suite() {
    std::mt19937_64 rng(2202);
    int bad_round = 0;
    for (int i = 0; i < 1000; ++i) {
        const double m = std::exp(uniform(rng, -10, 10));
        const double r = uniform(rng, 1e-3, 1 - 1e-3);
        const auto c = bound_constants(m, r);
        if (std::abs(c.m_back - m) > 1e-12 * m)
            ++bad_round;
    }
    const auto grid = default_search_grid();
    const double step = std::exp2(1.0 / 8.0);
    int bad_grid = 0, probes = 0;
    const auto space = Prob2Norm::standard(2);
    for (int i = 0; i < 100; ++i) {
        std::vector<Point> set, ws;
        for (int k = integer(rng, 1, 5); k > 0; --k)
            set.push_back(int_point(rng, -6, 6));
        for (int k = integer(rng, 1, 3); k > 0; --k)
            ws.push_back(int_point(rng, -6, 6));
        const std::vector<double> rs{0.01, 0.1, 0.3, 0.5, 0.9};
        for (const auto& p : is_bounded(space, set, ws, rs, grid)) {
            const double th = *p.closed_form_threshold;
            if (th < grid.front())
                continue; // every grid point certifies; nothing to compare
            ++probes;
            // The least certifying grid point is the first one above the
            // threshold, so it lies within one step of it.
            if (!p.grid_t0 || *p.grid_t0 <= th * (1 - 1e-12) || *p.grid_t0 > th * step * (1 + 1e-12))
                ++bad_grid;
        }
    }
    return {bad_round == 0 && bad_grid == 0 && probes > 0,
            "round_trips=1000 bad=" + std::to_string(bad_round) + " grid_probes=" +
                std::to_string(probes) + " off_by_more_than_a_step=" + std::to_string(bad_grid)};
}

Outcome radius_oracle() {
    std::mt19937_64 rng(2303);
    const auto space = Prob2Norm::standard(2);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
        const auto s = random_set(rng, 12, -5, 5);
        std::vector<oracle::Vec> pts;
        for (const auto& p : s.points)
            pts.push_back({p[0], p[1]});
        const double m = oracle::max_pair_area(pts);
        const auto r = radius(s, space);
        const auto grid = canonical_grid(r, DistributionFn::standard_ratio(m));
        for (double t : grid) {
            if (std::abs(eval(r, t) - oracle::ratio(m, t)) > 1e-12) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, "sets=500 mismatches=" + std::to_string(bad)};
}

struct Fixture {
    const char* name;
    SetDescriptor set;
    Prob2Norm space;
    BoundClass want;
};

std::vector<Fixture> class_fixtures() {
    return {
        {"indicator_finite", FiniteSet{{{1, 0}, {0, 1}, {2, 0}}}, Prob2Norm::indicator(2),
         BoundClass::CertainlyBounded},
        {"standard_finite_sup", AnalyticSet::standard(2), Prob2Norm::standard(2),
         BoundClass::PerhapsBounded},
        {"half_scaled_rule",
         AnalyticSet::custom_rule(DistributionFn::scaled(0.5, DistributionFn::standard_ratio(1))),
         Prob2Norm::standard(2), BoundClass::PerhapsUnbounded},
        {"standard_infinite_sup", AnalyticSet::standard(kInf), Prob2Norm::standard(2),
         BoundClass::CertainlyUnbounded},
    };
}

Outcome classification() {
    std::string bad;
    for (const auto& f : class_fixtures()) {
        const auto r = radius(f.set, f.space);
        const int n = is_certainly_bounded(r) + is_perhaps_bounded(r) + is_perhaps_unbounded(r) +
                      is_certainly_unbounded(r);
        if (classify(f.set, f.space).kind != f.want || n != 1)
            bad += std::string(f.name) + " ";
    }
    return {bad.empty(), "fixtures=4" + (bad.empty() ? std::string() : " wrong=" + bad)};
}

Outcome witness_g() {
    const auto grid = geometric_grid(-10, 20);
    std::string bad;
    for (const auto& f : class_fixtures()) {
        const auto r = radius(f.set, f.space);
        if (classify_radius(r).d_bounded()) {
            if (!witness_G_check(f.set, f.space, r, grid))
                bad += std::string(f.name) + " ";
        } else if (f.want == BoundClass::CertainlyUnbounded) {
            for (int k = -10; k <= 20; ++k) {
                const double a = std::exp2(k);
                if (witness_G_check(f.set, f.space, epsilon(a), grid) ||
                    witness_G_check(f.set, f.space, DistributionFn::standard_ratio(a), grid)) {
                    bad += std::string(f.name) + "@" + std::to_string(k) + " ";
                    break;
                }
            }
        }
    }
    return {bad.empty(), "fixtures=4 grid_max=2^20" + (bad.empty() ? std::string() : " wrong=" + bad)};
}

Outcome monotonicity() {
    std::mt19937_64 rng(2404);
    const auto grid = geometric_grid(-10, 20);
    int bad = 0, inexact = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto space = i % 2 ? Prob2Norm::indicator(2) : Prob2Norm::standard(2);
        const Point x{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        const Point y{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        double a = uniform(rng, -4, 4), b = uniform(rng, -4, 4);
        if (a == 0 || b == 0) {
            --i;
            continue;
        }
        if (std::abs(a) > std::abs(b))
            std::swap(a, b);
        if (!scalar_monotonicity_check(space, x, y, a, b, grid))
            ++bad;
        if (compare_leq(space.nu(b * x, y), space.nu(a * x, y), grid).how != Certification::Exact)
            ++inexact;
    }
    return {bad == 0 && inexact == 0, "checks=1000 failures=" + std::to_string(bad) +
                                          " not_closed_form=" + std::to_string(inexact)};
}

Outcome closure() {
    std::mt19937_64 rng(2505);
    int conclusion_bad = 0, min_bad = 0, split_bad = 0, scale_bad = 0;
    std::string first_ce;
    for (int i = 0; i < 200; ++i) {
        const auto space = i % 2 ? Prob2Norm::indicator(2) : Prob2Norm::standard(2);
        const auto a = random_set(rng, 4, -5, 5), b = random_set(rng, 4, -5, 5);
        const auto c = random_set(rng, 4, -5, 5), d = random_set(rng, 4, -5, 5);
        for (const auto& rep :
             {sum_closure_check(a, c, b, space), pair_sum_closure_check(a, b, c, d, space)}) {
            conclusion_bad += !rep.conclusion;
            split_bad += !rep.split_inequality;
            if (!rep.min_inequality) {
                ++min_bad;
                if (first_ce.empty() && rep.violation_t) {
                    std::ostringstream o;
                    o.precision(17);
                    o << "t=" << *rep.violation_t << ",sum=" << rep.violation_lhs
                      << ",bound=" << rep.violation_rhs;
                    first_ce = o.str();
                }
            }
        }
    }
    for (int i = 0; i < 100; ++i) {
        const PairSet p{random_set(rng, 5, -5, 5), random_set(rng, 5, -5, 5), std::nullopt};
        double alpha = 0;
        while (alpha == 0)
            alpha = uniform(rng, -10, 10);
        scale_bad += !scaling_closure_check(alpha, p, i % 2 ? Prob2Norm::indicator(2)
                                                            : Prob2Norm::standard(2));
    }
    std::string d = "fixtures=200 conclusion_failures=" + std::to_string(conclusion_bad) +
                    " min_inequality_violations=" + std::to_string(min_bad) +
                    " split_inequality_failures=" + std::to_string(split_bad) +
                    " scaling=100 scaling_failures=" + std::to_string(scale_bad);
    if (!first_ce.empty())
        d += " first_violation=" + first_ce;
    return {conclusion_bad + min_bad + split_bad + scale_bad == 0, d};
}

Outcome convex_series() {
    std::mt19937_64 rng(2606);
    const auto space = Prob2Norm::standard(2);
    int chain_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<Point> pts;
        for (int k = integer(rng, 1, 5); k > 0; --k)
            pts.push_back(int_point(rng, -5, 5));
        const auto series = ConvexSeries::geometric(pts, 30);
        const auto n = static_cast<std::size_t>(integer(rng, 1, 30));
        const auto m = static_cast<std::size_t>(integer(rng, static_cast<int>(n), 30));
        const Point z = int_point(rng, -5, 5);
        if (!chain_inequality_check(space, series, n, m, uniform(rng, 0.01, 10), z).holds)
            ++chain_bad;
    }
    int outside = 0, not_conv = 0;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<Point> poly;
        for (int k = integer(rng, 3, 6); k > 0; --k)
            poly.push_back(int_point(rng, -5, 5));
        const auto series = ConvexSeries::geometric(poly, 30);
        const std::vector<Point> ws{{1, 0}, {0, 1}};
        const auto rep = convex_series_closed_probe(space, poly, series, ws, 1.0, 0.1);
        outside += rep.status == ProbeStatus::Outside;
        not_conv += rep.status == ProbeStatus::NotConverged;
        worst = std::max(worst, rep.distance);
    }
    std::ostringstream d;
    d << "chains=1000 chain_failures=" << chain_bad << " probes=100 horizon=30 outside=" << outside
      << " not_converged=" << not_conv << " max_distance=" << worst;
    return {chain_bad == 0 && outside == 0 && not_conv == 0, d.str()};
}

std::pair<int, std::string> capture(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return {-1, out};
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(p);
    return {status, out};
}

Outcome determinism(const std::string& cli, const std::string& doc) {
    int mismatches = 0, errors = 0;
    for (const std::string extra : {"", " --seed 99", " --trials 50 --grid-scale 2"}) {
        const std::string cmd = "'" + cli + "' run '" + doc + "'" + extra + " 2>&1";
        const auto a = capture(cmd), b = capture(cmd);
        mismatches += a != b;
        errors += a.first != 0 || a.second.empty();
    }
    return {mismatches == 0 && errors == 0,
            "runs=3x2 mismatches=" + std::to_string(mismatches) + " errors=" + std::to_string(errors)};
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: m2pn_acceptance <m2pn cli> <document>\n";
        return 2;
    }
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, axiom_suites},
        {2, norm_suite},
        {3, equivalence},
        {4, bound_constants_suite},
        {5, radius_oracle},
        {6, classification},
        {7, witness_g},
        {8, monotonicity},
        {9, closure},
        {10, convex_series},
        {11, [&] { return determinism(argv[1], argv[2]); }},
    };
    int failed = 0;
    for (const auto& [id, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::cout << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << " " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
