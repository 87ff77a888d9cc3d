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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace m2pn {

/// A finite-horizon sequence: x_n = limit + direction / n (affine in 1/n),
/// or an explicit list x_1..x_N. Indices are 1-based.
class SequenceRule {
public:
    static SequenceRule affine(Point limit, Point direction, std::size_t horizon);
    static SequenceRule from_list(std::vector<Point> points);

    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t dim() const noexcept { return base_.dim(); }
    Point at(std::size_t n) const;
    /// x_n - x, formed as (limit - x) + direction / n for the affine family.
    Point offset(std::size_t n, const Point& x) const;

private:
    SequenceRule(Point base, std::optional<Point> direction, std::vector<Point> list,
                 std::size_t horizon);

    Point base_;
    std::optional<Point> direction_;
    std::vector<Point> list_;
    std::size_t horizon_;
};

/// n0 is the least index in [1, N] such that the criterion holds for every
/// later index (every later pair, for Cauchy checks) within the horizon.
/// `found` is false when no index after n0 is left to certify it.
struct ConvergenceVerdict {
    bool found = false;
    std::size_t n0 = 0;
    std::size_t horizon = 0;
    /// Smallest certified nu value (the weakest certificate); 1 if none.
    double certificate = 1.0;
};

ConvergenceVerdict converges_to(const Prob2Norm& space, const SequenceRule& seq, const Point& x,
                                std::span<const Point> witnesses, double t, double alpha);

/// Cauchy probe over pairs m > n within the horizon (seq.horizon() unless
/// a shorter one is given).
ConvergenceVerdict is_cauchy(const Prob2Norm& space, const SequenceRule& seq,
                             std::span<const Point> witnesses, double t, double alpha,
                             std::optional<std::size_t> horizon = std::nullopt);

struct WitnessAgreement {
    Point witness;
    ConvergenceVerdict by_area; // |x_n - x, z| < t alpha / (1 - alpha)
    ConvergenceVerdict by_nu;   // standard 2-P norm criterion
    bool agree;
};

struct EquivalenceReport {
    std::vector<WitnessAgreement> witnesses;
    bool agree;
};

/// Runs the 2-norm and the standard 2-P norm convergence criteria side by
/// side, per witness; the two must both converge or both exhaust.
EquivalenceReport norm_equivalence(const SequenceRule& seq, const Point& x,
                                      std::span<const Point> witnesses, double alpha, double t);

/// sum lambda_n x_n with lambda_n >= 0, sum lambda_n = 1, x_n cycling
/// through a list of points, observed up to a horizon N.
class ConvexSeries {
public:
    /// lambda_n = 2^-n.
    static ConvexSeries geometric(std::vector<Point> points, std::size_t horizon);
    /// Finite weight list, renormalised to sum 1; lambda_n = 0 past its end.
    static ConvexSeries weighted(std::vector<double> weights, std::vector<Point> points,
                                 std::optional<std::size_t> horizon = std::nullopt);

    bool is_geometric() const noexcept { return weights_.empty(); }
    std::size_t horizon() const noexcept { return horizon_; }
    std::span<const Point> cycle() const noexcept { return points_; }

    double weight(std::size_t n) const;
    const Point& point(std::size_t n) const;

    /// y_n = sum_{i<=n} lambda_i x_i.
    Point partial_sum(std::size_t n) const;
    /// gamma_{n,m} = sum_{i=n}^{m} lambda_i, 1 <= n <= m <= N.
    double tail_weight(std::size_t n, std::size_t m) const;
    /// gamma_{n,inf}; closed form 2^(1-n) for the geometric family.
    double tail_mass(std::size_t n) const;
    /// alpha_n = sum_{i<=n} lambda_i.
    double head_weight(std::size_t n) const;

    /// Weights lambda_i / sum_{j>=n} lambda_j for i >= n, reindexed from 1.
    ConvexSeries renormalized_tail(std::size_t n) const;

private:
    ConvexSeries(std::vector<double> weights, std::vector<Point> points, std::size_t offset,
                 std::size_t horizon);

    std::vector<double> weights_; // empty for the geometric family
    std::vector<Point> points_;
    std::size_t offset_;
    std::size_t horizon_;
};

struct ChainCheck {
    double lhs; // nu_{sum_{i=n}^{m} lambda_i x_i, z}(t)
    double rhs; // min_i nu_{x_i, z}(t / gamma_{n,m})
    bool holds;
};

ChainCheck chain_inequality_check(const Prob2Norm& space, const ConvexSeries& series,
                                  std::size_t n, std::size_t m, double t, const Point& z);

struct SeriesVerdict {
    ConvergenceVerdict cauchy;
    Point limit_estimate;      // y_N
    Point normalized_estimate; // y_N / alpha_N
    double tail_mass;          // gamma_{N+1,inf}
};

/// Cauchy probe on the partial sums y_1..y_N.
SeriesVerdict convex_series_converges(const Prob2Norm& space, const ConvexSeries& series,
                                      std::span<const Point> witnesses, double t, double alpha);

struct HullDistance {
    std::vector<double> coefficients; // convex coefficients, sum 1
    double distance;                  // |sum c_i v_i - p|
};

/// Nearest convex combination of the vertices to p (non-negative least
/// squares with the sum-to-one row weighted in).
HullDistance hull_distance(std::span<const Point> vertices, const Point& p);

enum class ProbeStatus { Inside, Outside, NotConverged };

struct ClosedProbeReport {
    ProbeStatus status;
    SeriesVerdict verdict;
    double distance;  // of the limit estimate to the polytope
    double tolerance; // 1e-9 + tail mass times the largest |x_i|
    bool passed() const noexcept { return status != ProbeStatus::Outside; }
};

/// Throws PreconditionViolation if a series point lies outside the polytope.
ClosedProbeReport convex_series_closed_probe(const Prob2Norm& space,
                                             std::span<const Point> vertices,
                                             const ConvexSeries& series,
                                             std::span<const Point> witnesses, double t,
                                             double alpha);

} // namespace m2pn
