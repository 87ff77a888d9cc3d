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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace m2pn {

class DistributionFn;

/// Unit step: 0 for t <= jump, 1 for t > jump. The jump may be -infinity.
struct StepAt {
    double jump;
};

/// t / (t + scale) for t > 0 and 0 otherwise; scale is finite and positive.
struct StandardRatio {
    double scale;
};

/// Left-continuous step function. Breakpoint (t_i, v_i) means the function
/// equals v_i on (t_i, t_{i+1}]; it is 0 up to and including t_0.
struct PiecewiseConstant {
    std::vector<std::pair<double, double>> steps;
};

/// factor * inner(t) on the finite reals, factor in (0, 1).
struct Scaled {
    double factor;
    std::shared_ptr<const DistributionFn> inner;
};

/// Pointwise minimum of at least two terms, none of which is itself a MinOf.
struct MinOf {
    std::vector<DistributionFn> terms;
};

/// An immutable distribution function on the extended reals.
///
/// Values are produced only by the factories below, which validate and
/// canonicalise: StandardRatio(0) becomes StepAt(0), a single step to 1 is
/// a StepAt, scaling a step function yields a PiecewiseConstant, and minima
/// are flattened with comparable terms merged in closed form.
///
/// Evaluation follows the extended-real contract F(-inf) = 0, F(+inf) = 1
/// regardless of the variant; the limit at +inf may still be below 1.
class DistributionFn {
public:
    using Variant = std::variant<StepAt, StandardRatio, PiecewiseConstant, Scaled, MinOf>;

    static DistributionFn step_at(double jump);
    static DistributionFn standard_ratio(double scale);
    static DistributionFn piecewise(std::vector<std::pair<double, double>> steps);
    static DistributionFn scaled(double factor, const DistributionFn& inner);
    /// Identically 0 on the finite reals.
    static DistributionFn zero();

    const Variant& variant() const noexcept { return v_; }

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(v_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(v_);
    }

    double operator()(double t) const;

private:
    explicit DistributionFn(Variant v) : v_(std::move(v)) {}
    friend DistributionFn pointwise_min(std::span<const DistributionFn> fns);

    Variant v_;
};

/// epsilon_a.
DistributionFn epsilon(double a);

double eval(const DistributionFn& f, double t);

/// lim_{u -> t-} F(u). At +inf this is the limit as the argument grows
/// without bound. Throws std::domain_error for t = -inf.
double left_limit(const DistributionFn& f, double t);

/// lim_{u -> t+} F(u) for t < +inf (at -inf: the limit towards -inf).
double right_limit(const DistributionFn& f, double t);

DistributionFn pointwise_min(const DistributionFn& f, const DistributionFn& g);
DistributionFn pointwise_min(std::span<const DistributionFn> fns);

/// G(t) = F(t / k) for k > 0. This is the argument rescaling of axiom A4.
DistributionFn rescale(const DistributionFn& f, double k);

/// Finite points where the closed form changes shape, sorted and unique.
std::vector<double> breakpoints(const DistributionFn& f);

enum class Certification { Exact, Grid };

struct OrderCertificate {
    bool holds;
    Certification how;
};

/// Closed-form decision of F <= G everywhere, if one is available for the
/// pair of shapes; std::nullopt otherwise.
std::optional<bool> analytic_leq(const DistributionFn& f, const DistributionFn& g);

/// F <= G on every point of `grid` and, where analytic_leq decides, also
/// analytically. Undecidable pairs fall back to the canonical grid.
OrderCertificate compare_leq(const DistributionFn& f, const DistributionFn& g,
                             std::span<const double> grid);
bool leq(const DistributionFn& f, const DistributionFn& g, std::span<const double> grid);

/// Breakpoints of both operands, midpoints between consecutive ones, a
/// geometric grid 2^k for k in [-10, 20], 0, large sentinels and `extra`.
std::vector<double> canonical_grid(const DistributionFn& f, const DistributionFn& g,
                                   std::span<const double> extra = {});

/// Pointwise equality on the canonical grid (values, right limits at
/// breakpoints, and limits at both infinities).
bool equal_on_canonical_grid(const DistributionFn& f, const DistributionFn& g,
                             double tol = 1e-12);

struct Membership {
    bool in_delta;
    bool in_delta_plus;
    bool in_d;
    bool in_d_plus;
};

Membership classify_df(const DistributionFn& f);

/// Compact textual form, e.g. "ratio(2)", "step(0)", "min(ratio(1),step(3))".
std::string to_string(const DistributionFn& f);

/// Shortest round-trip decimal form of a double; integral values get ".0".
std::string format_number(double v);

} // namespace m2pn
