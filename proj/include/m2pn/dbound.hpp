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

#include "m2pn/menger2pn.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace m2pn {

struct FiniteSet {
    std::vector<Point> points;
};

enum class AnalyticFamily { Standard, Indicator, CustomRule };

/// A set known only through the supremum of the 2-norm over its pairs
/// (caller-certified, possibly +inf), or directly through its radius.
struct AnalyticSet {
    double area_sup = 0.0;
    AnalyticFamily family = AnalyticFamily::Standard;
    std::optional<DistributionFn> rule; // CustomRule only

    static AnalyticSet standard(double area_sup);
    static AnalyticSet indicator(double area_sup);
    static AnalyticSet custom_rule(DistributionFn phi);
};

using SetDescriptor = std::variant<FiniteSet, AnalyticSet>;

/// inf { nu_{x,y}(t) : x, y in A } over ordered pairs, x = y included.
double phi(const SetDescriptor& a, const Prob2Norm& space, double t);

/// Left-limit regularisation of phi, as a distribution function. All pair
/// distribution functions are left-continuous, so on finite sets this is
/// the pointwise minimum of the pair functions.
DistributionFn radius(const SetDescriptor& a, const Prob2Norm& space);

/// Radius over an explicit list of pairs (x, y).
DistributionFn radius_of_pairs(std::span<const std::pair<Point, Point>> pairs,
                               const Prob2Norm& space);

enum class BoundClass { CertainlyBounded, PerhapsBounded, PerhapsUnbounded, CertainlyUnbounded };

std::string_view to_string(BoundClass c);

struct Classification {
    BoundClass kind;
    std::optional<double> x0; // R(x0) = 1, or R(x0) > 0 for PerhapsUnbounded
    double limit;             // limit of R at +inf
    bool d_bounded() const noexcept {
        return kind == BoundClass::CertainlyBounded || kind == BoundClass::PerhapsBounded;
    }
};

/// Some finite x0 > 0 with R(x0) = 1, decided in closed form: step shapes
/// reach 1 one unit after their last breakpoint, ratio and scaled shapes
/// never do.
std::optional<double> reaches_one(const DistributionFn& r);

bool is_certainly_bounded(const DistributionFn& r);
bool is_perhaps_bounded(const DistributionFn& r);
bool is_perhaps_unbounded(const DistributionFn& r);
bool is_certainly_unbounded(const DistributionFn& r);

Classification classify_radius(const DistributionFn& r);
Classification classify(const SetDescriptor& a, const Prob2Norm& space);

/// G <= nu_{x,y} for every pair of A (against the radius for analytic
/// sets). Throws std::invalid_argument unless G is in D+.
bool witness_G_check(const SetDescriptor& a, const Prob2Norm& space, const DistributionFn& g,
                     std::span<const double> grid);

/// A x B in the product of the carrier with itself. Analytic components
/// need `cross`, which describes sup |x, y| over x in A, y in B.
struct PairSet {
    SetDescriptor first;
    SetDescriptor second;
    std::optional<AnalyticSet> cross;
};

/// inf { nu_{x,y} : x in A, y in B }, regularised.
DistributionFn pair_radius(const PairSet& p, const Prob2Norm& space);
Classification classify_pair(const PairSet& p, const Prob2Norm& space);

/// { (alpha p, q) }. Analytic cross areas scale by |alpha|.
PairSet scale_pair(double alpha, const PairSet& p);

/// Whether alpha A x B is still D-bounded. Throws PreconditionViolation if
/// A x B is not.
bool scaling_closure_check(double alpha, const PairSet& p, const Prob2Norm& space);

/// Whether min(F, G) stays in D+ when both F and G are in D+.
bool dplus_min_closed(const DistributionFn& f, const DistributionFn& g);

struct ClosureReport {
    bool conclusion;     // the sum set is D-bounded
    bool min_inequality; // R_sum >= min(R_1, R_2) at every grid point
    std::optional<double> violation_t;
    double violation_lhs = 0.0;
    double violation_rhs = 0.0;
    /// Diagnostic: R_sum(2t) >= min(R_1(t), R_2(t)), the bound that the
    /// split-argument triangle axiom gives. Not part of passed().
    bool split_inequality;
    DistributionFn sum_radius;
    DistributionFn bound;
    bool passed() const noexcept { return conclusion && min_inequality; }
};

std::vector<Point> minkowski_sum(std::span<const Point> a, std::span<const Point> c);

/// (A + C) x B against R_{A x B} and R_{C x B}. Finite sets only; throws
/// PreconditionViolation unless A x B and C x B are D-bounded. An empty
/// grid selects the canonical grid of the two sides.
ClosureReport sum_closure_check(const FiniteSet& a, const FiniteSet& c, const FiniteSet& b,
                                const Prob2Norm& space, std::span<const double> grid = {});

/// A x B + C x D = { (p + r, q + s) } against R_{A x (B + D)} and
/// R_{C x (B + D)}. Throws PreconditionViolation unless A x B, C x D, A x D
/// and C x B are D-bounded.
ClosureReport pair_sum_closure_check(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c,
                                     const FiniteSet& d, const Prob2Norm& space,
                                     std::span<const double> grid = {});

/// MG2P-N1..N6 on X = Y = the carrier of `space`. N2 uses the dependence
/// criterion of A2; N5 and N6 are checked with split arguments,
/// nu_{x+y,z}(s+t) >= min(nu_{x,z}(s), nu_{y,z}(t)) and its mirror.
std::vector<AxiomReport> check_mg2pn_axioms(const Prob2Norm& space, const PointSampler& sampler,
                                            std::span<const double> t_grid,
                                            std::span<const double> s_grid, std::size_t trials,
                                            std::uint64_t seed = kDefaultSeed,
                                            double tol = kSampledTol);

} // namespace m2pn
