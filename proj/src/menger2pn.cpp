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

#include "m2pn/menger2pn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace m2pn {

namespace {

const double kDependenceFactors[] = {1.0, 2.0, 0.5, -1.0, -2.0, -0.5};

void require_dim(const Prob2Norm& space, const Point& p) {
    if (p.dim() != space.dim())
        throw DimensionMismatch("point of dimension " + std::to_string(p.dim()) +
                                " in a space of dimension " + std::to_string(space.dim()));
}

bool at_least(double value, double level) {
    return value >= level - kClosedFormTol;
}

} // namespace

std::string_view to_string(NormFamily family) {
    switch (family) {
    case NormFamily::Standard:
        return "standard";
    case NormFamily::Indicator:
        return "indicator";
    case NormFamily::Custom:
        return "custom";
    }
    return "?";
}

Prob2Norm::Prob2Norm(NormFamily family, std::size_t dim, std::shared_ptr<const PairMap> map)
    : family_(family), dim_(dim), map_(std::move(map)) {
    if (dim_ < 2)
        throw std::invalid_argument("Prob2Norm: dimension must be at least 2");
}

Prob2Norm Prob2Norm::standard(std::size_t dim) {
    return Prob2Norm(NormFamily::Standard, dim, nullptr);
}

Prob2Norm Prob2Norm::indicator(std::size_t dim) {
    return Prob2Norm(NormFamily::Indicator, dim, nullptr);
}

Prob2Norm Prob2Norm::custom(std::size_t dim, PairMap map) {
    if (!map)
        throw std::invalid_argument("Prob2Norm::custom: empty pair map");
    return Prob2Norm(NormFamily::Custom, dim, std::make_shared<const PairMap>(std::move(map)));
}

DistributionFn Prob2Norm::nu(const Point& x, const Point& y) const {
    require_dim(*this, x);
    require_dim(*this, y);
    switch (family_) {
    case NormFamily::Standard:
        return DistributionFn::standard_ratio(two_norm(x, y));
    case NormFamily::Indicator:
        return DistributionFn::step_at(two_norm(x, y));
    case NormFamily::Custom:
        break;
    }
    return (*map_)(x, y);
}

std::vector<double> geometric_grid(int kmin, int kmax, int per_octave) {
    if (per_octave < 1 || kmin > kmax)
        throw std::invalid_argument("geometric_grid: bad range");
    std::vector<double> g;
    for (int k = kmin * per_octave; k <= kmax * per_octave; ++k)
        g.push_back(std::exp2(static_cast<double>(k) / per_octave));
    return g;
}

std::vector<AxiomReport> check_2pn_axioms(const Prob2Norm& space, const PointSampler& sampler,
                                          std::span<const double> t_grid,
                                          std::span<const double> s_grid, std::size_t trials,
                                          std::uint64_t seed, double tol) {
    if (t_grid.empty() || s_grid.empty())
        throw std::invalid_argument("check_2pn_axioms: grids must be non-empty");
    if (trials == 0)
        throw std::invalid_argument("check_2pn_axioms: trials must be >= 1");
    for (double t : t_grid)
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::invalid_argument("check_2pn_axioms: t_grid entries must be finite and > 0");
    for (double s : s_grid)
        if (!std::isfinite(s))
            throw std::invalid_argument("check_2pn_axioms: s_grid entries must be finite");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(0.1, 10.0);
    std::uniform_real_distribution<double> mu_dist(1.0, 2.0);
    std::bernoulli_distribution sign;
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kDependenceFactors) - 1);

    AxiomReport a1{"A1"}, a2{"A2"}, a3{"A3"}, a4{"A4"}, a5{"A5"};
    for (std::size_t i = 0; i < trials; ++i) {
        const Point x = sampler(rng);
        const Point y = sampler(rng);
        const Point z = sampler(rng);
        const double alpha = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);

        const auto nxy = space.nu(x, y);
        if (eval(nxy, 0.0) != 0.0)
            a1.record("x=" + to_string(x) + " y=" + to_string(y) +
                      " value=" + format_number(eval(nxy, 0.0)));
        a1.trials += 1;

        // A2, dependent direction: value 1 on every t > 0.
        const Point dep = kDependenceFactors[pick(rng)] * x;
        const auto ndep = space.nu(x, dep);
        for (double t : t_grid) {
            if (std::abs(eval(ndep, t) - 1.0) > tol) {
                a2.record("dependent x=" + to_string(x) + " y=" + to_string(dep) +
                          " t=" + format_number(t) + " value=" + format_number(eval(ndep, t)));
                break;
            }
        }
        // A2, independent direction: some t > 0 with value below 1. The base
        // is pushed to unit length so the constructed area is at least 1.
        const double nx = euclidean_norm(x);
        const Point base = nx > 1e-6 ? (nx < 1.0 ? (1.0 / nx) * x : x) : sampler(rng);
        if (euclidean_norm(base) > 1e-6) {
            const Point ind = base + mu_dist(rng) * orthogonal_unit(base, rng);
            const auto nind = space.nu(base, ind);
            const bool below = std::any_of(t_grid.begin(), t_grid.end(),
                                           [&](double t) { return eval(nind, t) < 1.0 - tol; });
            if (!below)
                a2.record("independent x=" + to_string(base) + " y=" + to_string(ind));
        }
        a2.trials += 1;

        const auto nyx = space.nu(y, x);
        for (double t : t_grid) {
            if (std::abs(eval(nxy, t) - eval(nyx, t)) > tol) {
                a3.record("x=" + to_string(x) + " y=" + to_string(y) + " t=" + format_number(t));
                break;
            }
        }
        a3.trials += 1;

        const auto nscaled = space.nu(alpha * x, y);
        for (double t : t_grid) {
            const double lhs = eval(nscaled, t);
            const double rhs = eval(nxy, t / std::abs(alpha));
            if (std::abs(lhs - rhs) > tol) {
                a4.record("x=" + to_string(x) + " y=" + to_string(y) +
                          " alpha=" + format_number(alpha) + " t=" + format_number(t) +
                          " lhs=" + format_number(lhs) + " rhs=" + format_number(rhs));
                break;
            }
        }
        a4.trials += 1;

        const auto nsum = space.nu(x + y, z);
        const auto nxz = space.nu(x, z);
        const auto nyz = space.nu(y, z);
        bool a5_ok = true;
        for (double s : s_grid) {
            const double vs = eval(nxz, s);
            for (double t : t_grid) {
                const double lhs = eval(nsum, s + t);
                const double rhs = std::min(vs, eval(nyz, t));
                if (lhs < rhs - tol) {
                    a5.record("x=" + to_string(x) + " y=" + to_string(y) + " z=" + to_string(z) +
                              " s=" + format_number(s) + " t=" + format_number(t) +
                              " lhs=" + format_number(lhs) + " rhs=" + format_number(rhs));
                    a5_ok = false;
                    break;
                }
            }
            if (!a5_ok)
                break;
        }
        a5.trials += 1;
    }
    return {a1, a2, a3, a4, a5};
}

BallQuery::BallQuery(Point center, Point direction, double level, double radius)
    : center_(std::move(center)), direction_(std::move(direction)), level_(level),
      radius_(radius) {
    if (center_.dim() != direction_.dim())
        throw DimensionMismatch("BallQuery: center and direction differ in dimension");
    if (!(level_ > 0.0 && level_ < 1.0))
        throw std::invalid_argument("BallQuery: level must lie in (0, 1)");
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
        throw std::invalid_argument("BallQuery: radius must be finite and > 0");
}

bool ball_contains(const Prob2Norm& space, const BallQuery& q, const Point& y) {
    return at_least(eval(space.nu(q.center() - y, q.direction()), q.radius()), q.level());
}

bool convexity_probe_ball(const Prob2Norm& space, const BallQuery& q, const Point& y1,
                          const Point& y2, std::span<const double> lambda_grid) {
    if (!ball_contains(space, q, y1) || !ball_contains(space, q, y2))
        throw PreconditionViolation("convexity_probe_ball: endpoints must lie in the ball");
    for (double l : lambda_grid) {
        if (!(l >= 0.0 && l <= 1.0))
            throw std::invalid_argument("convexity_probe_ball: lambda must lie in [0, 1]");
        if (!ball_contains(space, q, l * y1 + (1.0 - l) * y2))
            return false;
    }
    return true;
}

bool scalar_monotonicity_check(const Prob2Norm& space, const Point& x, const Point& y,
                               double alpha, double beta, std::span<const double> t_grid) {
    if (alpha == 0.0 || beta == 0.0)
        throw std::invalid_argument("scalar_monotonicity_check: scalars must be non-zero");
    if (std::abs(alpha) > std::abs(beta))
        throw PreconditionViolation("scalar_monotonicity_check: requires |alpha| <= |beta|");
    if (t_grid.empty())
        throw std::invalid_argument("scalar_monotonicity_check: empty grid");
    return compare_leq(space.nu(beta * x, y), space.nu(alpha * x, y), t_grid).holds;
}

std::vector<double> default_search_grid() {
    return geometric_grid(-10, 30, 8);
}

std::vector<BoundednessProbe> is_bounded(const Prob2Norm& space, std::span<const Point> set,
                                         std::span<const Point> witnesses,
                                         std::span<const double> r_grid,
                                         std::span<const double> search_grid) {
    if (set.empty() || witnesses.empty())
        throw std::invalid_argument("is_bounded: set and witnesses must be non-empty");
    std::vector<double> grid(search_grid.begin(), search_grid.end());
    if (grid.empty())
        grid = default_search_grid();
    std::sort(grid.begin(), grid.end());

    std::vector<DistributionFn> dfs;
    double max_area = 0.0;
    for (const auto& x : set) {
        for (const auto& y : witnesses) {
            dfs.push_back(space.nu(x, y));
            max_area = std::max(max_area, two_norm(x, y));
        }
    }

    std::vector<BoundednessProbe> out;
    for (double r : r_grid) {
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("is_bounded: r must lie in (0, 1)");
        BoundednessProbe probe{r, std::nullopt, std::nullopt};
        for (double t : grid) {
            if (!(t > 0.0))
                continue;
            double worst = 1.0;
            for (const auto& f : dfs)
                worst = std::min(worst, eval(f, t));
            if (worst > 1.0 - r + kClosedFormTol) {
                probe.grid_t0 = t;
                break;
            }
        }
        if (space.family() == NormFamily::Standard)
            probe.closed_form_threshold = max_area * (1.0 - r) / r;
        else if (space.family() == NormFamily::Indicator)
            probe.closed_form_threshold = max_area;
        out.push_back(probe);
    }
    return out;
}

BoundConstants bound_constants(double m, double r) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::domain_error("bound_constants: M must be finite and > 0");
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("bound_constants: r must lie in (0, 1)");
    const double t0 = m * (1.0 - r) / r;
    return {t0, t0 * r / (1.0 - r)};
}

Point pair_point(const Point& x, const Point& y) {
    std::vector<double> c(x.coords().begin(), x.coords().end());
    c.insert(c.end(), y.coords().begin(), y.coords().end());
    return Point(std::move(c));
}

std::pair<Point, Point> split_pair(const Point& p, std::size_t first_dim) {
    if (first_dim < 2 || p.dim() < first_dim + 2)
        throw DimensionMismatch("split_pair: cannot split a point of dimension " +
                                std::to_string(p.dim()) + " at " + std::to_string(first_dim));
    auto c = p.coords();
    return {Point(std::vector<double>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(first_dim))),
            Point(std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(first_dim), c.end()))};
}

Prob2Norm product_space(const Prob2Norm& first, const Prob2Norm& second) {
    const std::size_t d1 = first.dim();
    return Prob2Norm::custom(d1 + second.dim(), [first, second, d1](const Point& p, const Point& q) {
        auto [x, y] = split_pair(p, d1);
        auto [z, w] = split_pair(q, d1);
        return pointwise_min(first.nu(x, z), second.nu(y, w));
    });
}

} // namespace m2pn
