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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace m2pn {

/// A vector of R^d, d >= 2, with finite coordinates.
class Point {
public:
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    static Point zero(std::size_t dim);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend Point operator+(const Point& a, const Point& b);
    friend Point operator-(const Point& a, const Point& b);
    friend Point operator*(double s, const Point& a);
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

double dot(const Point& a, const Point& b);
double euclidean_norm(const Point& a);
std::string to_string(const Point& p);

/// Area of the parallelogram spanned by x and y: the square root of the
/// 2x2 Gram determinant, or |x1 y2 - x2 y1| when d = 2.
double two_norm(const Point& x, const Point& y);

/// area <= tol * max(1, |x| |y|).
bool numerically_dependent(const Point& x, const Point& y, double tol = 1e-9);

using Rational = boost::multiprecision::cpp_rational;

/// A point of Q^2 for the exact 2-norm mode.
struct RationalPoint2 {
    Rational x;
    Rational y;

    friend RationalPoint2 operator+(const RationalPoint2& a, const RationalPoint2& b) {
        return {a.x + b.x, a.y + b.y};
    }
    friend RationalPoint2 operator*(const Rational& s, const RationalPoint2& a) {
        return {s * a.x, s * a.y};
    }
    friend bool operator==(const RationalPoint2&, const RationalPoint2&) = default;
};

/// |x1 y2 - x2 y1| in exact arithmetic.
Rational two_norm_exact(const RationalPoint2& a, const RationalPoint2& b);

struct AxiomReport {
    static constexpr std::size_t kMaxStoredFailures = 16;

    std::string axiom;
    std::size_t trials = 0;
    std::size_t failure_count = 0;
    std::vector<std::string> failures{}; // first kMaxStoredFailures counterexamples

    bool passed() const noexcept { return failure_count == 0; }
    void record(std::string counterexample);
};

using PointSampler = std::function<Point(std::mt19937_64&)>;

/// Coordinates drawn independently and uniformly from [lo, hi).
PointSampler uniform_sampler(std::size_t dim, double lo, double hi);
/// Integer coordinates drawn uniformly from [lo, hi].
PointSampler integer_sampler(std::size_t dim, int lo, int hi);

/// A unit vector orthogonal to x (x non-zero), derived from a random draw.
Point orthogonal_unit(const Point& x, std::mt19937_64& rng);

/// Reports N1, N2, N3, N4 and "shear" (|x, y + a x| = |x, y|).
std::vector<AxiomReport> check_2norm_axioms(const PointSampler& sampler, std::size_t trials,
                                            double tol = 1e-9,
                                            std::uint64_t seed = 0x6d32706eULL);

/// Exact counterpart over rational points with coordinates p/q,
/// |p| <= max_num, 1 <= q <= max_den. Equalities are asserted exactly.
std::vector<AxiomReport> check_2norm_axioms_exact(std::size_t trials, int max_num = 20,
                                                  int max_den = 6,
                                                  std::uint64_t seed = 0x6d32706eULL);

} // namespace m2pn
