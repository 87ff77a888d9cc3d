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

#pragma once

#include "m2pn/dfalgebra.hpp"
#include "m2pn/errors.hpp"
#include "m2pn/geometry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace m2pn {

enum class NormFamily { Standard, Indicator, Custom };

std::string_view to_string(NormFamily family);

using PairMap = std::function<DistributionFn(const Point&, const Point&)>;

/// A 2-probabilistic norm on R^d: a rule assigning a distribution function
/// nu_{x,y} to every pair of points.
///
/// Standard:  nu_{x,y} = ratio(|x,y|), i.e. t / (t + |x,y|) for t > 0.
/// Indicator: nu_{x,y} = step(|x,y|).
/// Custom:    an arbitrary pair map; carries no axiom guarantee until
///            check_2pn_axioms has been run on it.
class Prob2Norm {
public:
    static Prob2Norm standard(std::size_t dim);
    static Prob2Norm indicator(std::size_t dim);
    static Prob2Norm custom(std::size_t dim, PairMap map);

    NormFamily family() const noexcept { return family_; }
    std::size_t dim() const noexcept { return dim_; }
    /// Standard and Indicator satisfy A1-A5 by construction.
    bool validated() const noexcept { return family_ != NormFamily::Custom; }

    DistributionFn nu(const Point& x, const Point& y) const;

private:
    Prob2Norm(NormFamily family, std::size_t dim, std::shared_ptr<const PairMap> map);

    NormFamily family_;
    std::size_t dim_;
    std::shared_ptr<const PairMap> map_;
};

inline DistributionFn nu(const Prob2Norm& space, const Point& x, const Point& y) {
    return space.nu(x, y);
}

/// 2^(k / per_octave) for k in [kmin * per_octave, kmax * per_octave].
std::vector<double> geometric_grid(int kmin = -10, int kmax = 20, int per_octave = 1);

/// Reports A1..A5. A2 is exercised on constructed pairs (x, l x) with
/// l in {+-1, +-2, +-1/2} and on constructed independent pairs; A5 over the
/// full s_grid x t_grid product.
std::vector<AxiomReport> check_2pn_axioms(const Prob2Norm& space, const PointSampler& sampler,
                                          std::span<const double> t_grid,
                                          std::span<const double> s_grid, std::size_t trials,
                                          std::uint64_t seed = kDefaultSeed,
                                          double tol = kSampledTol);

/// B_{e,level}[center, radius] = { y : nu_{center - y, e}(radius) >= level }.
class BallQuery {
public:
    BallQuery(Point center, Point direction, double level, double radius);

    const Point& center() const noexcept { return center_; }
    const Point& direction() const noexcept { return direction_; }
    double level() const noexcept { return level_; }
    double radius() const noexcept { return radius_; }

private:
    Point center_;
    Point direction_;
    double level_;
    double radius_;
};

bool ball_contains(const Prob2Norm& space, const BallQuery& q, const Point& y);

/// Whether every l y1 + (1 - l) y2, l in lambda_grid, stays in the ball.
/// Throws PreconditionViolation unless both endpoints are members.
bool convexity_probe_ball(const Prob2Norm& space, const BallQuery& q, const Point& y1,
                          const Point& y2, std::span<const double> lambda_grid);

/// nu_{beta x, y} <= nu_{alpha x, y} on t_grid (and in closed form where
/// available). Requires |alpha| <= |beta|, both non-zero.
bool scalar_monotonicity_check(const Prob2Norm& space, const Point& x, const Point& y,
                               double alpha, double beta, std::span<const double> t_grid);

struct BoundednessProbe {
    double r;
    /// Least search-grid t0 with min nu_{x,y}(t0) > 1 - r, if any.
    std::optional<double> grid_t0;
    /// Standard: M (1 - r) / r; Indicator: M; with M the largest pair area.
    /// Every t0 strictly above this value certifies the level r.
    std::optional<double> closed_form_threshold;
};

/// 2^(k/8) for k in [-80, 240].
std::vector<double> default_search_grid();

std::vector<BoundednessProbe> is_bounded(const Prob2Norm& space, std::span<const Point> set,
                                         std::span<const Point> witnesses,
                                         std::span<const double> r_grid,
                                         std::span<const double> search_grid = {});

struct BoundConstants {
    double t0;     // M (1 - r) / r
    double m_back; // t0 r / (1 - r)
};

BoundConstants bound_constants(double m, double r);

/// Concatenation (x, y) of the two component points.
Point pair_point(const Point& x, const Point& y);
std::pair<Point, Point> split_pair(const Point& p, std::size_t first_dim);

/// Custom space on concatenated points with
/// nu_{[(x,y),(z,z')]}(t) = min(nu'_{x,z}(t), nu''_{y,z'}(t)).
Prob2Norm product_space(const Prob2Norm& first, const Prob2Norm& second);

} // namespace m2pn
