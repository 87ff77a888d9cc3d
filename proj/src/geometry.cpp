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

#include "m2pn/geometry.hpp"

#include "m2pn/dfalgebra.hpp"
#include "m2pn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace m2pn {

namespace {

// a*b - c*d with one rounding error (Kahan).
double diff_of_products(double a, double b, double c, double d) {
    const double w = c * d;
    const double e = std::fma(-c, d, w);
    const double f = std::fma(a, b, -w);
    return f + e;
}

void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("points of dimension " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
}

const double kDependenceFactors[] = {1.0, 2.0, 0.5, -1.0, -2.0, -0.5};

std::string fmt_tuple(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty())
            out += ' ';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

} // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2)
        throw std::invalid_argument("Point: dimension must be at least 2");
    for (double c : coords_)
        if (!std::isfinite(c))
            throw std::invalid_argument("Point: coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zero(std::size_t dim) {
    return Point(std::vector<double>(dim, 0.0));
}

Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a[i] + b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a[i] - b[i];
    return Point(std::move(c));
}

Point operator*(double s, const Point& a) {
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = s * a[i];
    return Point(std::move(c));
}

double dot(const Point& a, const Point& b) {
    require_same_dim(a, b);
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(s);
}

double euclidean_norm(const Point& a) {
    return std::sqrt(dot(a, a));
}

std::string to_string(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i)
            out += ',';
        out += format_number(p[i]);
    }
    return out + ")";
}

double two_norm(const Point& x, const Point& y) {
    require_same_dim(x, y);
    if (x.dim() == 2) {
        // Fixed operand order keeps the result exactly symmetric.
        const bool swap = std::lexicographical_compare(y.coords().begin(), y.coords().end(),
                                                       x.coords().begin(), x.coords().end());
        const Point& a = swap ? y : x;
        const Point& b = swap ? x : y;
        return std::abs(diff_of_products(a[0], b[1], a[1], b[0]));
    }
    const double xx = dot(x, x);
    const double yy = dot(y, y);
    const double xy = dot(x, y);
    const double gram = diff_of_products(xx, yy, xy, xy);
    return gram > 0.0 ? std::sqrt(gram) : 0.0;
}

bool numerically_dependent(const Point& x, const Point& y, double tol) {
    return two_norm(x, y) <= tol * std::max(1.0, euclidean_norm(x) * euclidean_norm(y));
}

Rational two_norm_exact(const RationalPoint2& a, const RationalPoint2& b) {
    Rational det = a.x * b.y - a.y * b.x;
    return det < 0 ? Rational(-det) : det;
}

void AxiomReport::record(std::string counterexample) {
    ++failure_count;
    if (failures.size() < kMaxStoredFailures)
        failures.push_back(std::move(counterexample));
}

PointSampler uniform_sampler(std::size_t dim, double lo, double hi) {
    if (!(lo < hi))
        throw std::invalid_argument("uniform_sampler: empty range");
    return [dim, lo, hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(lo, hi);
        std::vector<double> c(dim);
        for (auto& v : c)
            v = u(rng);
        return Point(std::move(c));
    };
}

PointSampler integer_sampler(std::size_t dim, int lo, int hi) {
    if (lo > hi)
        throw std::invalid_argument("integer_sampler: empty range");
    return [dim, lo, hi](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> u(lo, hi);
        std::vector<double> c(dim);
        for (auto& v : c)
            v = u(rng);
        return Point(std::move(c));
    };
}

Point orthogonal_unit(const Point& x, std::mt19937_64& rng) {
    const double xx = dot(x, x);
    if (!(xx > 0.0))
        throw std::invalid_argument("orthogonal_unit: x must be non-zero");
    std::normal_distribution<double> g;
    for (;;) {
        std::vector<double> c(x.dim());
        for (auto& v : c)
            v = g(rng);
        Point v(std::move(c));
        Point w = v - (dot(v, x) / xx) * x;
        const double n = euclidean_norm(w);
        if (n > 1e-3)
            return (1.0 / n) * w;
    }
}

std::vector<AxiomReport> check_2norm_axioms(const PointSampler& sampler, std::size_t trials,
                                            double tol, std::uint64_t seed) {
    if (trials == 0)
        throw std::invalid_argument("check_2norm_axioms: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> mu_dist(1.0, 2.0);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kDependenceFactors) - 1);

    AxiomReport n1{"N1"}, n2{"N2"}, n3{"N3"}, n4{"N4"}, shear{"shear"};
    for (std::size_t i = 0; i < trials; ++i) {
        const Point x = sampler(rng);
        const Point y = sampler(rng);
        const Point z = sampler(rng);
        const double alpha = alpha_dist(rng);
        const double nx = euclidean_norm(x), ny = euclidean_norm(y), nz = euclidean_norm(z);

        // N1, forward: constructed dependent pairs have zero area.
        const double lambda = kDependenceFactors[pick(rng)];
        const Point dep = lambda * x;
        if (!numerically_dependent(x, dep, tol) || two_norm(x, Point::zero(x.dim())) != 0.0)
            n1.record(fmt_tuple({{"x", to_string(x)}, {"y", to_string(dep)},
                                 {"area", format_number(two_norm(x, dep))}}));
        // N1, backward: an independent pair never reads as dependent.
        const Point base = nx > 1e-6 ? x : sampler(rng);
        if (euclidean_norm(base) > 1e-6) {
            const Point ind = base + mu_dist(rng) * orthogonal_unit(base, rng);
            if (numerically_dependent(base, ind, tol))
                n1.record(fmt_tuple({{"x", to_string(base)}, {"y", to_string(ind)},
                                     {"area", format_number(two_norm(base, ind))}}));
        }
        n1.trials += 1;

        const double a_xy = two_norm(x, y);
        if (std::abs(a_xy - two_norm(y, x)) > tol)
            n2.record(fmt_tuple({{"x", to_string(x)}, {"y", to_string(y)}}));
        n2.trials += 1;

        const double lhs3 = two_norm(alpha * x, y);
        const double rhs3 = std::abs(alpha) * a_xy;
        if (std::abs(lhs3 - rhs3) > tol * std::max(1.0, std::abs(alpha) * nx * ny))
            n3.record(fmt_tuple({{"x", to_string(x)}, {"y", to_string(y)},
                                 {"alpha", format_number(alpha)}, {"lhs", format_number(lhs3)},
                                 {"rhs", format_number(rhs3)}}));
        n3.trials += 1;

        const double lhs4 = two_norm(x + y, z);
        const double rhs4 = two_norm(x, z) + two_norm(y, z);
        if (lhs4 > rhs4 + tol * std::max(1.0, (nx + ny) * nz))
            n4.record(fmt_tuple({{"x", to_string(x)}, {"y", to_string(y)}, {"z", to_string(z)},
                                 {"lhs", format_number(lhs4)}, {"rhs", format_number(rhs4)}}));
        n4.trials += 1;

        const double sheared = two_norm(x, y + alpha * x);
        if (std::abs(sheared - a_xy) > tol * std::max(1.0, nx * (ny + std::abs(alpha) * nx)))
            shear.record(fmt_tuple({{"x", to_string(x)}, {"y", to_string(y)},
                                    {"alpha", format_number(alpha)}}));
        shear.trials += 1;
    }
    return {n1, n2, n3, n4, shear};
}

std::vector<AxiomReport> check_2norm_axioms_exact(std::size_t trials, int max_num, int max_den,
                                                  std::uint64_t seed) {
    if (trials == 0)
        throw std::invalid_argument("check_2norm_axioms_exact: trials must be >= 1");
    if (max_num < 1 || max_den < 1)
        throw std::invalid_argument("check_2norm_axioms_exact: bounds must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    auto rational = [&] { return Rational(num(rng), den(rng)); };
    auto nonzero = [&] {
        Rational r;
        do {
            r = rational();
        } while (r == 0);
        return r;
    };
    auto point = [&] { return RationalPoint2{rational(), rational()}; };
    auto show = [](const RationalPoint2& p) {
        return "(" + p.x.str() + "," + p.y.str() + ")";
    };

    const RationalPoint2 origin{0, 0};
    AxiomReport n1{"N1"}, n2{"N2"}, n3{"N3"}, n4{"N4"}, shear{"shear"};
    for (std::size_t i = 0; i < trials; ++i) {
        const RationalPoint2 x = point(), y = point(), z = point();
        const Rational alpha = nonzero();

        const RationalPoint2 dep = nonzero() * x;
        if (two_norm_exact(x, dep) != 0 || two_norm_exact(x, origin) != 0)
            n1.record("x=" + show(x) + " y=" + show(dep));
        RationalPoint2 base = x;
        if (base == origin)
            base = RationalPoint2{1, 0};
        const RationalPoint2 perp{-base.y, base.x};
        const RationalPoint2 ind = base + nonzero() * perp;
        if (two_norm_exact(base, ind) == 0)
            n1.record("x=" + show(base) + " y=" + show(ind));
        n1.trials += 1;

        const Rational a_xy = two_norm_exact(x, y);
        if (a_xy != two_norm_exact(y, x))
            n2.record("x=" + show(x) + " y=" + show(y));
        n2.trials += 1;

        const Rational abs_alpha = alpha < 0 ? Rational(-alpha) : alpha;
        if (two_norm_exact(alpha * x, y) != abs_alpha * a_xy)
            n3.record("x=" + show(x) + " y=" + show(y) + " alpha=" + alpha.str());
        n3.trials += 1;

        if (two_norm_exact(x + y, z) > two_norm_exact(x, z) + two_norm_exact(y, z))
            n4.record("x=" + show(x) + " y=" + show(y) + " z=" + show(z));
        n4.trials += 1;

        if (two_norm_exact(x, y + alpha * x) != a_xy)
            shear.record("x=" + show(x) + " y=" + show(y) + " alpha=" + alpha.str());
        shear.trials += 1;
    }
    return {n1, n2, n3, n4, shear};
}

} // namespace m2pn
