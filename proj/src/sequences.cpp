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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace m2pn {

namespace {

void require_probe_args(std::span<const Point> witnesses, double t, double alpha) {
    if (witnesses.empty())
        throw std::invalid_argument("convergence probe: witnesses must be non-empty");
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("convergence probe: t must be finite and > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("convergence probe: alpha must lie in (0, 1)");
}

// Strict "value > 1 - alpha"; values within the closed-form tolerance of
// the threshold do not count as above it.
bool above(double value, double alpha) {
    return value > 1.0 - alpha + kClosedFormTol;
}

} // namespace

SequenceRule::SequenceRule(Point base, std::optional<Point> direction, std::vector<Point> list,
                           std::size_t horizon)
    : base_(std::move(base)), direction_(std::move(direction)), list_(std::move(list)),
      horizon_(horizon) {
    if (horizon_ == 0)
        throw std::invalid_argument("SequenceRule: horizon must be >= 1");
}

SequenceRule SequenceRule::affine(Point limit, Point direction, std::size_t horizon) {
    if (limit.dim() != direction.dim())
        throw DimensionMismatch("SequenceRule::affine: limit and direction differ in dimension");
    return SequenceRule(std::move(limit), std::move(direction), {}, horizon);
}

SequenceRule SequenceRule::from_list(std::vector<Point> points) {
    if (points.empty())
        throw std::invalid_argument("SequenceRule::from_list: empty list");
    for (const auto& p : points)
        if (p.dim() != points.front().dim())
            throw DimensionMismatch("SequenceRule::from_list: mixed dimensions");
    Point base = points.front();
    const std::size_t n = points.size();
    return SequenceRule(std::move(base), std::nullopt, std::move(points), n);
}

Point SequenceRule::at(std::size_t n) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("SequenceRule::at: index outside [1, horizon]");
    if (direction_)
        return base_ + (1.0 / static_cast<double>(n)) * *direction_;
    return list_[n - 1];
}

Point SequenceRule::offset(std::size_t n, const Point& x) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("SequenceRule::offset: index outside [1, horizon]");
    if (direction_)
        return (base_ - x) + (1.0 / static_cast<double>(n)) * *direction_;
    return list_[n - 1] - x;
}

ConvergenceVerdict converges_to(const Prob2Norm& space, const SequenceRule& seq, const Point& x,
                                std::span<const Point> witnesses, double t, double alpha) {
    require_probe_args(witnesses, t, alpha);
    const std::size_t horizon = seq.horizon();
    std::vector<double> worst(horizon + 1, 1.0);
    std::size_t last_fail = 0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        const Point d = seq.offset(n, x);
        for (const auto& z : witnesses) {
            const double v = eval(space.nu(d, z), t);
            worst[n] = std::min(worst[n], v);
            if (!above(v, alpha))
                last_fail = n;
        }
    }
    ConvergenceVerdict out;
    out.horizon = horizon;
    out.found = last_fail < horizon;
    out.n0 = std::max<std::size_t>(1, last_fail);
    for (std::size_t n = last_fail + 1; n <= horizon; ++n)
        out.certificate = std::min(out.certificate, worst[n]);
    return out;
}

ConvergenceVerdict is_cauchy(const Prob2Norm& space, const SequenceRule& seq,
                             std::span<const Point> witnesses, double t, double alpha,
                             std::optional<std::size_t> horizon) {
    require_probe_args(witnesses, t, alpha);
    const std::size_t n_max = horizon.value_or(seq.horizon());
    if (n_max == 0 || n_max > seq.horizon())
        throw std::out_of_range("is_cauchy: horizon outside [1, sequence horizon]");

    std::vector<Point> xs;
    for (std::size_t n = 1; n <= n_max; ++n)
        xs.push_back(seq.at(n));

    // worst[n]: smallest value over all pairs (m > n) and witnesses.
    std::vector<double> worst(n_max + 1, 1.0);
    std::size_t last_fail = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t m = n + 1; m <= n_max; ++m) {
            const Point d = xs[m - 1] - xs[n - 1];
            for (const auto& z : witnesses) {
                const double v = eval(space.nu(d, z), t);
                worst[n] = std::min(worst[n], v);
                if (!above(v, alpha))
                    last_fail = std::max(last_fail, n);
            }
        }
    }
    ConvergenceVerdict out;
    out.horizon = n_max;
    out.found = last_fail < std::max<std::size_t>(n_max - 1, 1);
    out.n0 = std::max<std::size_t>(1, last_fail);
    for (std::size_t n = last_fail + 1; n <= n_max; ++n)
        out.certificate = std::min(out.certificate, worst[n]);
    return out;
}

EquivalenceReport norm_equivalence(const SequenceRule& seq, const Point& x,
                                      std::span<const Point> witnesses, double alpha, double t) {
    require_probe_args(witnesses, t, alpha);
    const auto standard = Prob2Norm::standard(seq.dim());
    // nu = t / (t + a) > 1 - alpha  <=>  a < t alpha / (1 - alpha).
    const double eps = t * alpha / (1.0 - alpha);

    EquivalenceReport report{{}, true};
    for (const auto& z : witnesses) {
        ConvergenceVerdict by_area;
        by_area.horizon = seq.horizon();
        std::vector<double> areas(seq.horizon() + 1, 0.0);
        std::size_t last_fail = 0;
        for (std::size_t n = 1; n <= seq.horizon(); ++n) {
            areas[n] = two_norm(seq.offset(n, x), z);
            if (!(areas[n] < eps * (1.0 - kClosedFormTol)))
                last_fail = n;
        }
        by_area.found = last_fail < seq.horizon();
        by_area.n0 = std::max<std::size_t>(1, last_fail);
        // For the area route the certificate is the largest certified area.
        by_area.certificate = 0.0;
        for (std::size_t n = last_fail + 1; n <= seq.horizon(); ++n)
            by_area.certificate = std::max(by_area.certificate, areas[n]);

        const Point one[] = {z};
        auto by_nu = converges_to(standard, seq, x, one, t, alpha);
        const bool agree = by_area.found == by_nu.found;
        report.agree = report.agree && agree;
        report.witnesses.push_back({z, by_area, by_nu, agree});
    }
    return report;
}

ConvexSeries::ConvexSeries(std::vector<double> weights, std::vector<Point> points,
                           std::size_t offset, std::size_t horizon)
    : weights_(std::move(weights)), points_(std::move(points)), offset_(offset),
      horizon_(horizon) {
    if (points_.empty())
        throw std::invalid_argument("ConvexSeries: no points");
    for (const auto& p : points_)
        if (p.dim() != points_.front().dim())
            throw DimensionMismatch("ConvexSeries: mixed dimensions");
    if (horizon_ == 0)
        throw std::invalid_argument("ConvexSeries: horizon must be >= 1");
    if (!weights_.empty()) {
        double total = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("ConvexSeries: weights must be finite and >= 0");
            total += w;
        }
        if (!(total > 0.0))
            throw std::invalid_argument("ConvexSeries: weights sum to zero");
        for (double& w : weights_)
            w /= total;
    } else if (horizon_ > 1000) {
        throw std::invalid_argument("ConvexSeries: geometric horizon above 1000");
    }
}

ConvexSeries ConvexSeries::geometric(std::vector<Point> points, std::size_t horizon) {
    return ConvexSeries({}, std::move(points), 0, horizon);
}

ConvexSeries ConvexSeries::weighted(std::vector<double> weights, std::vector<Point> points,
                                    std::optional<std::size_t> horizon) {
    if (weights.empty())
        throw std::invalid_argument("ConvexSeries::weighted: empty weight list");
    const std::size_t n = horizon.value_or(weights.size());
    return ConvexSeries(std::move(weights), std::move(points), 0, n);
}

double ConvexSeries::weight(std::size_t n) const {
    if (n < 1)
        throw std::out_of_range("ConvexSeries::weight: index must be >= 1");
    if (is_geometric())
        return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 2000)));
    return n <= weights_.size() ? weights_[n - 1] : 0.0;
}

const Point& ConvexSeries::point(std::size_t n) const {
    if (n < 1)
        throw std::out_of_range("ConvexSeries::point: index must be >= 1");
    return points_[(offset_ + n - 1) % points_.size()];
}

Point ConvexSeries::partial_sum(std::size_t n) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("ConvexSeries::partial_sum: index outside [1, horizon]");
    Point y = Point::zero(points_.front().dim());
    for (std::size_t i = 1; i <= n; ++i)
        y = y + weight(i) * point(i);
    return y;
}

double ConvexSeries::tail_weight(std::size_t n, std::size_t m) const {
    if (n < 1 || n > m || m > horizon_)
        throw std::out_of_range("ConvexSeries::tail_weight: requires 1 <= n <= m <= horizon");
    if (is_geometric())
        return std::ldexp(1.0, 1 - static_cast<int>(n)) - std::ldexp(1.0, -static_cast<int>(m));
    double s = 0.0;
    for (std::size_t i = n; i <= m; ++i)
        s += weight(i);
    return s;
}

double ConvexSeries::tail_mass(std::size_t n) const {
    if (n < 1)
        throw std::out_of_range("ConvexSeries::tail_mass: index must be >= 1");
    if (is_geometric())
        return std::ldexp(1.0, 1 - static_cast<int>(std::min<std::size_t>(n, 2000)));
    double s = 0.0;
    for (std::size_t i = n; i <= weights_.size(); ++i)
        s += weights_[i - 1];
    return s;
}

double ConvexSeries::head_weight(std::size_t n) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("ConvexSeries::head_weight: index outside [1, horizon]");
    if (is_geometric())
        return 1.0 - std::ldexp(1.0, -static_cast<int>(n));
    double s = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        s += weight(i);
    return s;
}

ConvexSeries ConvexSeries::renormalized_tail(std::size_t n) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("ConvexSeries::renormalized_tail: index outside [1, horizon]");
    if (!(tail_mass(n) > 0.0))
        throw std::domain_error("ConvexSeries::renormalized_tail: zero tail mass");
    const std::size_t horizon = horizon_ - n + 1;
    if (is_geometric())
        return ConvexSeries({}, points_, offset_ + n - 1, horizon);
    std::vector<double> rest(weights_.begin() + static_cast<std::ptrdiff_t>(n - 1), weights_.end());
    return ConvexSeries(std::move(rest), points_, offset_ + n - 1, horizon);
}

ChainCheck chain_inequality_check(const Prob2Norm& space, const ConvexSeries& series,
                                  std::size_t n, std::size_t m, double t, const Point& z) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("chain_inequality_check: t must be finite and > 0");
    const double gamma = series.tail_weight(n, m);
    if (!(gamma > 0.0))
        throw std::domain_error("chain_inequality_check: gamma_{n,m} is zero");
    Point block = Point::zero(z.dim());
    double rhs = 1.0;
    for (std::size_t i = n; i <= m; ++i) {
        block = block + series.weight(i) * series.point(i);
        rhs = std::min(rhs, eval(space.nu(series.point(i), z), t / gamma));
    }
    const double lhs = eval(space.nu(block, z), t);
    return {lhs, rhs, lhs >= rhs - kClosedFormTol};
}

SeriesVerdict convex_series_converges(const Prob2Norm& space, const ConvexSeries& series,
                                      std::span<const Point> witnesses, double t, double alpha) {
    std::vector<Point> sums;
    sums.reserve(series.horizon());
    Point y = Point::zero(series.cycle().front().dim());
    for (std::size_t n = 1; n <= series.horizon(); ++n) {
        y = y + series.weight(n) * series.point(n);
        sums.push_back(y);
    }
    const auto seq = SequenceRule::from_list(sums);
    const std::size_t horizon = series.horizon();
    const double head = series.head_weight(horizon);
    return SeriesVerdict{
        is_cauchy(space, seq, witnesses, t, alpha),
        y,
        head > 0.0 ? (1.0 / head) * y : y,
        series.tail_mass(horizon + 1),
    };
}

HullDistance hull_distance(std::span<const Point> vertices, const Point& p) {
    if (vertices.empty())
        throw std::invalid_argument("hull_distance: no vertices");
    const auto d = static_cast<Eigen::Index>(p.dim());
    const auto k = static_cast<Eigen::Index>(vertices.size());
    double scale = 1.0;
    for (const auto& v : vertices) {
        if (v.dim() != p.dim())
            throw DimensionMismatch("hull_distance: vertex dimension differs from the point");
        for (double c : v.coords())
            scale = std::max(scale, std::abs(c));
    }
    for (double c : p.coords())
        scale = std::max(scale, std::abs(c));
    const double w = 1e4 * scale;

    Eigen::MatrixXd a(d + 1, k);
    Eigen::VectorXd b(d + 1);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index i = 0; i < d; ++i)
            a(i, j) = vertices[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        a(d, j) = w;
    }
    for (Eigen::Index i = 0; i < d; ++i)
        b(i) = p[static_cast<std::size_t>(i)];
    b(d) = w;

    // Lawson-Hanson active-set NNLS.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
    std::vector<bool> passive(static_cast<std::size_t>(k), false);
    const double tol = 1e-12 * a.norm() * std::max(1.0, b.norm());
    auto solve_passive = [&](Eigen::VectorXd& s) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < k; ++j)
            if (passive[static_cast<std::size_t>(j)])
                idx.push_back(j);
        Eigen::MatrixXd ap(d + 1, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c)
            ap.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
        Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
        s = Eigen::VectorXd::Zero(k);
        for (std::size_t c = 0; c < idx.size(); ++c)
            s(idx[c]) = sp(static_cast<Eigen::Index>(c));
    };
    for (int outer = 0; outer < 10 * k + 10; ++outer) {
        Eigen::VectorXd grad = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_val = tol;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_val) {
                best = j;
                best_val = grad(j);
            }
        }
        if (best < 0)
            break;
        passive[static_cast<std::size_t>(best)] = true;
        for (int inner = 0; inner < 10 * k + 10; ++inner) {
            Eigen::VectorXd s;
            solve_passive(s);
            bool feasible = true;
            for (Eigen::Index j = 0; j < k; ++j)
                if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0)
                    feasible = false;
            if (feasible) {
                x = s;
                break;
            }
            double step = 1.0;
            for (Eigen::Index j = 0; j < k; ++j)
                if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0)
                    step = std::min(step, x(j) / (x(j) - s(j)));
            x += step * (s - x);
            for (Eigen::Index j = 0; j < k; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
        }
    }

    HullDistance out;
    const double total = x.sum();
    out.coefficients.resize(static_cast<std::size_t>(k));
    std::vector<double> q(p.dim(), 0.0);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double c = total > 0.0 ? std::max(0.0, x(j)) / total : (j == 0 ? 1.0 : 0.0);
        out.coefficients[static_cast<std::size_t>(j)] = c;
        for (std::size_t i = 0; i < p.dim(); ++i)
            q[i] += c * vertices[static_cast<std::size_t>(j)][i];
    }
    out.distance = euclidean_norm(Point(std::move(q)) - p);
    return out;
}

ClosedProbeReport convex_series_closed_probe(const Prob2Norm& space,
                                             std::span<const Point> vertices,
                                             const ConvexSeries& series,
                                             std::span<const Point> witnesses, double t,
                                             double alpha) {
    double reach = 0.0;
    for (const auto& x : series.cycle()) {
        if (hull_distance(vertices, x).distance > 1e-9 * std::max(1.0, euclidean_norm(x)))
            throw PreconditionViolation("convex_series_closed_probe: series point " +
                                        to_string(x) + " lies outside the polytope");
        reach = std::max(reach, euclidean_norm(x));
    }
    auto verdict = convex_series_converges(space, series, witnesses, t, alpha);
    const double tolerance = 1e-9 + verdict.tail_mass * reach;
    if (!verdict.cauchy.found)
        return {ProbeStatus::NotConverged, std::move(verdict),
                std::numeric_limits<double>::quiet_NaN(), tolerance};
    const double distance = hull_distance(vertices, verdict.limit_estimate).distance;
    const auto status = distance <= tolerance ? ProbeStatus::Inside : ProbeStatus::Outside;
    return {status, std::move(verdict), distance, tolerance};
}

} // namespace m2pn
