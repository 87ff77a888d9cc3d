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

// Reference computations written independently of the library: plain
// textbook formulas, integer arithmetic where it is exact, no shared code.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// |x1 y2 - x2 y1| in R^2.
inline double area2(const Vec& x, const Vec& y) {
    return std::abs(x[0] * y[1] - x[1] * y[0]);
}

// Length of the cross product in R^3.
inline double area3(const Vec& x, const Vec& y) {
    const double c0 = x[1] * y[2] - x[2] * y[1];
    const double c1 = x[2] * y[0] - x[0] * y[2];
    const double c2 = x[0] * y[1] - x[1] * y[0];
    return std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
}

// Square root of the sum of squared 2x2 minors (Cauchy-Binet), any d.
inline double area_minors(const Vec& x, const Vec& y) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const long double m = static_cast<long double>(x[i]) * y[j] -
                                  static_cast<long double>(x[j]) * y[i];
            s += m * m;
        }
    return static_cast<double>(std::sqrt(s));
}

// Integer-exact doubled area for integer coordinates in R^2.
inline std::int64_t area2_int(std::int64_t x0, std::int64_t x1, std::int64_t y0,
                              std::int64_t y1) {
    const std::int64_t d = x0 * y1 - x1 * y0;
    return d < 0 ? -d : d;
}

inline double ratio(double a, double t) {
    if (t <= 0.0)
        return 0.0;
    if (std::isinf(t))
        return 1.0;
    return t / (t + a);
}

inline double step(double a, double t) {
    return t > a ? 1.0 : 0.0;
}

inline double max_pair_area(const std::vector<Vec>& pts) {
    double m = 0.0;
    for (const auto& x : pts)
        for (const auto& y : pts)
            m = std::max(m, area_minors(x, y));
    return m;
}

// Last n in [1, horizon] with area_num / (den * n) >= eps_num / eps_den,
// i.e. the closed-form n0 of x_n = x + u / n under the standard family,
// where the criterion ratio > 1 - alpha reads area_n < t alpha / (1 - alpha).
// All quantities are integers so the boundary case is decided exactly:
// area_n = A / n with A = a_num / a_den, eps = e_num / e_den.
inline std::uint64_t affine_n0(std::uint64_t a_num, std::uint64_t a_den, std::uint64_t e_num,
                               std::uint64_t e_den, std::uint64_t horizon) {
    std::uint64_t last = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n)
        if (a_num * e_den >= e_num * a_den * n) // A / n >= eps
            last = n;
    return std::max<std::uint64_t>(last, 1);
}

} // namespace oracle
