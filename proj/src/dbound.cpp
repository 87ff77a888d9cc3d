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

#include "m2pn/dbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace m2pn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const double kDependenceFactors[] = {1.0, 2.0, 0.5, -1.0, -2.0, -0.5};

void require_valid(const AnalyticSet& a) {
    if (std::isnan(a.area_sup) || a.area_sup < 0.0)
        throw std::invalid_argument("AnalyticSet: area_sup must be >= 0 or +inf");
    if (a.family == AnalyticFamily::CustomRule && !a.rule)
        throw std::invalid_argument("AnalyticSet: custom rule without a radius function");
}

void require_valid(const FiniteSet& a) {
    if (a.points.empty())
        throw std::invalid_argument("FiniteSet: empty point list");
}

DistributionFn analytic_radius(const AnalyticSet& a, const Prob2Norm& space) {
    require_valid(a);
    switch (a.family) {
    case AnalyticFamily::Standard:
        if (space.family() != NormFamily::Standard)
            throw PreconditionViolation("AnalyticSet: standard descriptor on a non-standard space");
        return std::isinf(a.area_sup) ? DistributionFn::zero()
                                      : DistributionFn::standard_ratio(a.area_sup);
    case AnalyticFamily::Indicator:
        if (space.family() != NormFamily::Indicator)
            throw PreconditionViolation(
                "AnalyticSet: indicator descriptor on a non-indicator space");
        return std::isinf(a.area_sup) ? DistributionFn::zero()
                                      : DistributionFn::step_at(a.area_sup);
    case AnalyticFamily::CustomRule:
        break;
    }
    return *a.rule;
}

std::vector<double> positive_candidates(const DistributionFn& r) {
    std::vector<double> out;
    for (double b : breakpoints(r))
        if (b + 1.0 > 0.0)
            out.push_back(b + 1.0);
    for (double g : geometric_grid(-10, 20))
        out.push_back(g);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<double> first_positive(const DistributionFn& r) {
    for (double x : positive_candidates(r))
        if (eval(r, x) > 0.0)
            return x;
    return std::nullopt;
}

double limit_at_inf(const DistributionFn& r) {
    return left_limit(r, kInf);
}

ClosureReport compare_to_bound(const DistributionFn& sum_radius, const DistributionFn& r1,
                               const DistributionFn& r2, std::span<const double> grid) {
    if (!dplus_min_closed(r1, r2))
        throw PreconditionViolation("closure check: min of the radii leaves D+");
    const auto bound = pointwise_min(r1, r2);
    const std::vector<double> pts =
        grid.empty() ? canonical_grid(sum_radius, bound)
                     : std::vector<double>(grid.begin(), grid.end());

    ClosureReport rep{classify_radius(sum_radius).d_bounded(), true, std::nullopt, 0.0, 0.0,
                      true, sum_radius, bound};
    for (double t : pts) {
        const double lhs = eval(sum_radius, t);
        const double rhs = eval(bound, t);
        if (rep.min_inequality && lhs < rhs - kClosedFormTol) {
            rep.min_inequality = false;
            rep.violation_t = t;
            rep.violation_lhs = lhs;
            rep.violation_rhs = rhs;
        }
        if (eval(sum_radius, 2.0 * t) < rhs - kClosedFormTol)
            rep.split_inequality = false;
    }
    return rep;
}

} // namespace

AnalyticSet AnalyticSet::standard(double area_sup) {
    AnalyticSet a{area_sup, AnalyticFamily::Standard, std::nullopt};
    require_valid(a);
    return a;
}

AnalyticSet AnalyticSet::indicator(double area_sup) {
    AnalyticSet a{area_sup, AnalyticFamily::Indicator, std::nullopt};
    require_valid(a);
    return a;
}

AnalyticSet AnalyticSet::custom_rule(DistributionFn phi) {
    return AnalyticSet{kInf, AnalyticFamily::CustomRule, std::move(phi)};
}

double phi(const SetDescriptor& a, const Prob2Norm& space, double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("phi: t must be finite");
    return std::visit(
        overloaded{
            [&](const FiniteSet& f) {
                require_valid(f);
                double v = 1.0;
                for (const auto& x : f.points)
                    for (const auto& y : f.points)
                        v = std::min(v, eval(space.nu(x, y), t));
                return v;
            },
            [&](const AnalyticSet& s) { return eval(analytic_radius(s, space), t); },
        },
        a);
}

DistributionFn radius(const SetDescriptor& a, const Prob2Norm& space) {
    return std::visit(
        overloaded{
            [&](const FiniteSet& f) {
                require_valid(f);
                std::vector<DistributionFn> fns;
                fns.reserve(f.points.size() * f.points.size());
                for (const auto& x : f.points)
                    for (const auto& y : f.points)
                        fns.push_back(space.nu(x, y));
                return pointwise_min(fns);
            },
            [&](const AnalyticSet& s) { return analytic_radius(s, space); },
        },
        a);
}

DistributionFn radius_of_pairs(std::span<const std::pair<Point, Point>> pairs,
                               const Prob2Norm& space) {
    if (pairs.empty())
        throw std::invalid_argument("radius_of_pairs: empty pair list");
    std::vector<DistributionFn> fns;
    fns.reserve(pairs.size());
    for (const auto& [x, y] : pairs)
        fns.push_back(space.nu(x, y));
    return pointwise_min(fns);
}

std::string_view to_string(BoundClass c) {
    switch (c) {
    case BoundClass::CertainlyBounded:
        return "certainly_bounded";
    case BoundClass::PerhapsBounded:
        return "perhaps_bounded";
    case BoundClass::PerhapsUnbounded:
        return "perhaps_unbounded";
    case BoundClass::CertainlyUnbounded:
        return "certainly_unbounded";
    }
    return "?";
}

std::optional<double> reaches_one(const DistributionFn& r) {
    return std::visit(
        overloaded{
            [](const StepAt& s) -> std::optional<double> {
                return s.jump == -kInf ? 1.0 : std::max(s.jump, 0.0) + 1.0;
            },
            [](const StandardRatio&) -> std::optional<double> { return std::nullopt; },
            [](const PiecewiseConstant& p) -> std::optional<double> {
                for (const auto& [t, v] : p.steps)
                    if (v >= 1.0)
                        return std::max(t, 0.0) + 1.0;
                return std::nullopt;
            },
            [](const Scaled&) -> std::optional<double> { return std::nullopt; },
            [](const MinOf& m) -> std::optional<double> {
                double x0 = 0.0;
                for (const auto& term : m.terms) {
                    const auto x = reaches_one(term);
                    if (!x)
                        return std::nullopt;
                    x0 = std::max(x0, *x);
                }
                return x0;
            },
        },
        r.variant());
}

bool is_certainly_bounded(const DistributionFn& r) {
    return reaches_one(r).has_value();
}

bool is_perhaps_bounded(const DistributionFn& r) {
    return !reaches_one(r) && limit_at_inf(r) >= 1.0 - kClosedFormTol;
}

bool is_perhaps_unbounded(const DistributionFn& r) {
    const double l = limit_at_inf(r);
    return l > kClosedFormTol && l < 1.0 - kClosedFormTol && first_positive(r).has_value();
}

bool is_certainly_unbounded(const DistributionFn& r) {
    return limit_at_inf(r) <= kClosedFormTol;
}

Classification classify_radius(const DistributionFn& r) {
    const double limit = limit_at_inf(r);
    if (auto x0 = reaches_one(r))
        return {BoundClass::CertainlyBounded, x0, limit};
    if (is_perhaps_bounded(r))
        return {BoundClass::PerhapsBounded, std::nullopt, limit};
    if (is_certainly_unbounded(r))
        return {BoundClass::CertainlyUnbounded, std::nullopt, limit};
    if (auto x0 = first_positive(r))
        return {BoundClass::PerhapsUnbounded, x0, limit};
    throw std::logic_error("classify_radius: no class fits " + to_string(r));
}

Classification classify(const SetDescriptor& a, const Prob2Norm& space) {
    return classify_radius(radius(a, space));
}

bool witness_G_check(const SetDescriptor& a, const Prob2Norm& space, const DistributionFn& g,
                     std::span<const double> grid) {
    if (!classify_df(g).in_d_plus)
        throw std::invalid_argument("witness_G_check: G must lie in D+");
    if (const auto* f = std::get_if<FiniteSet>(&a)) {
        require_valid(*f);
        for (const auto& x : f->points)
            for (const auto& y : f->points)
                if (!compare_leq(g, space.nu(x, y), grid).holds)
                    return false;
        return true;
    }
    return compare_leq(g, radius(a, space), grid).holds;
}

DistributionFn pair_radius(const PairSet& p, const Prob2Norm& space) {
    const auto* a = std::get_if<FiniteSet>(&p.first);
    const auto* b = std::get_if<FiniteSet>(&p.second);
    if (a && b) {
        require_valid(*a);
        require_valid(*b);
        std::vector<DistributionFn> fns;
        fns.reserve(a->points.size() * b->points.size());
        for (const auto& x : a->points)
            for (const auto& y : b->points)
                fns.push_back(space.nu(x, y));
        return pointwise_min(fns);
    }
    if (!p.cross)
        throw PreconditionViolation("pair_radius: analytic component without a cross descriptor");
    return analytic_radius(*p.cross, space);
}

Classification classify_pair(const PairSet& p, const Prob2Norm& space) {
    return classify_radius(pair_radius(p, space));
}

PairSet scale_pair(double alpha, const PairSet& p) {
    if (alpha == 0.0 || !std::isfinite(alpha))
        throw std::invalid_argument("scale_pair: alpha must be finite and non-zero");
    const double k = std::abs(alpha);
    auto scale_analytic = [k](AnalyticSet s) {
        if (s.family == AnalyticFamily::CustomRule)
            s.rule = rescale(*s.rule, k);
        else
            s.area_sup *= k;
        return s;
    };
    PairSet out = p;
    if (auto* f = std::get_if<FiniteSet>(&out.first)) {
        for (auto& x : f->points)
            x = alpha * x;
    } else {
        out.first = scale_analytic(std::get<AnalyticSet>(out.first));
    }
    if (out.cross)
        out.cross = scale_analytic(*out.cross);
    return out;
}

bool scaling_closure_check(double alpha, const PairSet& p, const Prob2Norm& space) {
    if (!classify_pair(p, space).d_bounded())
        throw PreconditionViolation("scaling_closure_check: A x B is not D-bounded");
    return classify_pair(scale_pair(alpha, p), space).d_bounded();
}

bool dplus_min_closed(const DistributionFn& f, const DistributionFn& g) {
    if (!classify_df(f).in_d_plus || !classify_df(g).in_d_plus)
        return true;
    return classify_df(pointwise_min(f, g)).in_d_plus;
}

std::vector<Point> minkowski_sum(std::span<const Point> a, std::span<const Point> c) {
    std::vector<Point> out;
    out.reserve(a.size() * c.size());
    for (const auto& x : a)
        for (const auto& y : c)
            out.push_back(x + y);
    return out;
}

ClosureReport sum_closure_check(const FiniteSet& a, const FiniteSet& c, const FiniteSet& b,
                                const Prob2Norm& space, std::span<const double> grid) {
    const auto r1 = pair_radius({a, b, std::nullopt}, space);
    const auto r2 = pair_radius({c, b, std::nullopt}, space);
    if (!classify_radius(r1).d_bounded() || !classify_radius(r2).d_bounded())
        throw PreconditionViolation("sum_closure_check: A x B and C x B must be D-bounded");
    const FiniteSet sum{minkowski_sum(a.points, c.points)};
    return compare_to_bound(pair_radius({sum, b, std::nullopt}, space), r1, r2, grid);
}

ClosureReport pair_sum_closure_check(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c,
                                     const FiniteSet& d, const Prob2Norm& space,
                                     std::span<const double> grid) {
    for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&c, &d}, std::pair{&a, &d},
                               std::pair{&c, &b}}) {
        if (!classify_pair({*x, *y, std::nullopt}, space).d_bounded())
            throw PreconditionViolation(
                "pair_sum_closure_check: A x B, C x D, A x D and C x B must be D-bounded");
    }
    const FiniteSet bd{minkowski_sum(b.points, d.points)};
    const auto r1 = pair_radius({a, bd, std::nullopt}, space);
    const auto r2 = pair_radius({c, bd, std::nullopt}, space);

    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& p : a.points)
        for (const auto& q : b.points)
            for (const auto& r : c.points)
                for (const auto& s : d.points)
                    pairs.emplace_back(p + r, q + s);
    return compare_to_bound(radius_of_pairs(pairs, space), r1, r2, grid);
}

std::vector<AxiomReport> check_mg2pn_axioms(const Prob2Norm& space, const PointSampler& sampler,
                                            std::span<const double> t_grid,
                                            std::span<const double> s_grid, std::size_t trials,
                                            std::uint64_t seed, double tol) {
    if (t_grid.empty() || s_grid.empty())
        throw std::invalid_argument("check_mg2pn_axioms: grids must be non-empty");
    if (trials == 0)
        throw std::invalid_argument("check_mg2pn_axioms: trials must be >= 1");
    for (double t : t_grid)
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::invalid_argument("check_mg2pn_axioms: t_grid entries must be finite and > 0");
    for (double s : s_grid)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("check_mg2pn_axioms: s_grid entries must be finite and > 0");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(0.1, 10.0);
    std::uniform_real_distribution<double> mu_dist(1.0, 2.0);
    std::bernoulli_distribution sign;
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kDependenceFactors) - 1);

    AxiomReport n1{"N1"}, n2{"N2"}, n3{"N3"}, n4{"N4"}, n5{"N5"}, n6{"N6"};
    auto split_check = [&](AxiomReport& rep, const DistributionFn& lhs_fn,
                           const DistributionFn& f, const DistributionFn& g,
                           const std::string& where) {
        for (double s : s_grid) {
            const double vs = eval(f, s);
            for (double t : t_grid) {
                const double lhs = eval(lhs_fn, s + t);
                const double rhs = std::min(vs, eval(g, t));
                if (lhs < rhs - tol) {
                    rep.record(where + " s=" + format_number(s) + " t=" + format_number(t) +
                               " lhs=" + format_number(lhs) + " rhs=" + format_number(rhs));
                    return;
                }
            }
        }
    };

    for (std::size_t i = 0; i < trials; ++i) {
        const Point x = sampler(rng);
        const Point y = sampler(rng);
        const Point z = sampler(rng);
        const double alpha = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);
        const std::string xy = "x=" + to_string(x) + " y=" + to_string(y);

        const auto nxy = space.nu(x, y);
        if (eval(nxy, 0.0) != 0.0)
            n1.record(xy + " value=" + format_number(eval(nxy, 0.0)));
        n1.trials += 1;

        const Point dep = kDependenceFactors[pick(rng)] * x;
        const auto ndep = space.nu(x, dep);
        for (double t : t_grid) {
            if (std::abs(eval(ndep, t) - 1.0) > tol) {
                n2.record("dependent x=" + to_string(x) + " y=" + to_string(dep) +
                          " t=" + format_number(t));
                break;
            }
        }
        const double nx = euclidean_norm(x);
        if (nx > 1e-6) {
            const Point base = nx < 1.0 ? (1.0 / nx) * x : x;
            const Point ind = base + mu_dist(rng) * orthogonal_unit(base, rng);
            const auto nind = space.nu(base, ind);
            if (std::none_of(t_grid.begin(), t_grid.end(),
                             [&](double t) { return eval(nind, t) < 1.0 - tol; }))
                n2.record("independent x=" + to_string(base) + " y=" + to_string(ind));
        }
        n2.trials += 1;

        const auto nyx = space.nu(y, x);
        for (double t : t_grid) {
            if (std::abs(eval(nxy, t) - eval(nyx, t)) > tol) {
                n3.record(xy + " t=" + format_number(t));
                break;
            }
        }
        n3.trials += 1;

        const auto nax = space.nu(alpha * x, y);
        const auto nay = space.nu(x, alpha * y);
        for (double t : t_grid) {
            const double ref = eval(nxy, t / std::abs(alpha));
            const double l1 = eval(nax, t);
            const double l2 = eval(nay, t);
            if (std::abs(l1 - ref) > tol || std::abs(l2 - ref) > tol) {
                n4.record(xy + " alpha=" + format_number(alpha) + " t=" + format_number(t) +
                          " left=" + format_number(l1) + " right=" + format_number(l2) +
                          " ref=" + format_number(ref));
                break;
            }
        }
        n4.trials += 1;

        split_check(n5, space.nu(x + y, z), space.nu(x, z), space.nu(y, z),
                    xy + " z=" + to_string(z));
        n5.trials += 1;
        split_check(n6, space.nu(x, y + z), space.nu(x, y), space.nu(x, z),
                    xy + " z=" + to_string(z));
        n6.trials += 1;
    }
    return {n1, n2, n3, n4, n5, n6};
}

} // namespace m2pn
