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

#include "m2pn/dfalgebra.hpp"

#include "m2pn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
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

bool approx_le(double x, double y, double tol = kClosedFormTol) {
    return x <= y + tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool is_step_type(const DistributionFn& f) {
    if (f.is<PiecewiseConstant>())
        return true;
    return f.is<StepAt>() && std::isfinite(f.as<StepAt>().jump);
}

bool is_identity_step(const DistributionFn& f) {
    return f.is<StepAt>() && f.as<StepAt>().jump == -kInf;
}

bool is_zero(const DistributionFn& f) {
    return f.is<PiecewiseConstant>() && f.as<PiecewiseConstant>().steps.empty();
}

// (factor, scale) of c * t / (t + a), if f has that shape.
std::optional<std::pair<double, double>> ratio_shape(const DistributionFn& f) {
    if (f.is<StandardRatio>())
        return std::pair{1.0, f.as<StandardRatio>().scale};
    if (f.is<Scaled>()) {
        const auto& s = f.as<Scaled>();
        if (s.inner->is<StandardRatio>())
            return std::pair{s.factor, s.inner->as<StandardRatio>().scale};
    }
    return std::nullopt;
}

double limit_pos_inf(const DistributionFn& f) {
    return std::visit(
        overloaded{
            [](const StepAt&) { return 1.0; },
            [](const StandardRatio&) { return 1.0; },
            [](const PiecewiseConstant& p) { return p.steps.empty() ? 0.0 : p.steps.back().second; },
            [](const Scaled& s) { return s.factor * limit_pos_inf(*s.inner); },
            [](const MinOf& m) {
                double v = 1.0;
                for (const auto& t : m.terms)
                    v = std::min(v, limit_pos_inf(t));
                return v;
            },
        },
        f.variant());
}

} // namespace

// Builds the canonical step-function value from (t, v) pairs sorted by t.
static DistributionFn make_step_function(const std::vector<std::pair<double, double>>& raw) {
    std::vector<std::pair<double, double>> steps;
    double prev = 0.0;
    for (const auto& [t, v] : raw) {
        if (v != prev) {
            steps.emplace_back(t, v);
            prev = v;
        }
    }
    if (steps.size() == 1 && steps.front().second == 1.0)
        return DistributionFn::step_at(steps.front().first);
    if (steps.empty())
        return DistributionFn::zero();
    return DistributionFn::piecewise(std::move(steps));
}

DistributionFn DistributionFn::step_at(double jump) {
    if (std::isnan(jump) || jump == kInf)
        throw std::invalid_argument("step_at: jump must be a real number or -inf");
    return DistributionFn(StepAt{jump});
}

DistributionFn DistributionFn::standard_ratio(double scale) {
    if (!std::isfinite(scale) || scale < 0.0)
        throw std::invalid_argument("standard_ratio: scale must be finite and >= 0");
    if (scale == 0.0)
        return step_at(0.0);
    return DistributionFn(StandardRatio{scale});
}

DistributionFn DistributionFn::piecewise(std::vector<std::pair<double, double>> steps) {
    double prev_t = -kInf;
    double prev_v = 0.0;
    for (const auto& [t, v] : steps) {
        if (!std::isfinite(t))
            throw std::invalid_argument("piecewise: breakpoints must be finite");
        if (!(t > prev_t))
            throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("piecewise: values must lie in [0, 1]");
        if (v < prev_v)
            throw std::invalid_argument("piecewise: values must be non-decreasing");
        prev_t = t;
        prev_v = v;
    }
    // Canonicalise only when it changes something, so the constructor below
    // terminates for already-canonical input.
    bool canonical = true;
    double prev = 0.0;
    for (const auto& step : steps) {
        if (step.second == prev)
            canonical = false;
        prev = step.second;
    }
    if (steps.size() == 1 && steps.front().second == 1.0)
        canonical = false;
    if (!canonical)
        return make_step_function(steps);
    return DistributionFn(PiecewiseConstant{std::move(steps)});
}

DistributionFn DistributionFn::zero() {
    return DistributionFn(PiecewiseConstant{});
}

DistributionFn DistributionFn::scaled(double factor, const DistributionFn& inner) {
    if (!(factor >= 0.0 && factor <= 1.0))
        throw std::invalid_argument("scaled: factor must lie in [0, 1]");
    if (factor == 1.0)
        return inner;
    if (factor == 0.0 || is_zero(inner))
        return zero();
    if (is_step_type(inner)) {
        std::vector<std::pair<double, double>> steps;
        if (inner.is<StepAt>()) {
            steps.emplace_back(inner.as<StepAt>().jump, factor);
        } else {
            for (const auto& [t, v] : inner.as<PiecewiseConstant>().steps)
                steps.emplace_back(t, v * factor);
        }
        return make_step_function(steps);
    }
    if (inner.is<Scaled>()) {
        const auto& s = inner.as<Scaled>();
        return scaled(factor * s.factor, *s.inner);
    }
    return DistributionFn(Scaled{factor, std::make_shared<const DistributionFn>(inner)});
}

double DistributionFn::operator()(double t) const {
    return eval(*this, t);
}

DistributionFn epsilon(double a) {
    if (!std::isfinite(a))
        throw std::invalid_argument("epsilon: a must be finite");
    return DistributionFn::step_at(a);
}

double eval(const DistributionFn& f, double t) {
    if (std::isnan(t))
        throw std::domain_error("eval: argument is NaN");
    if (t == -kInf)
        return 0.0;
    if (t == kInf)
        return 1.0;
    return std::visit(
        overloaded{
            [t](const StepAt& s) { return t > s.jump ? 1.0 : 0.0; },
            [t](const StandardRatio& r) { return t <= 0.0 ? 0.0 : t / (t + r.scale); },
            [t](const PiecewiseConstant& p) {
                // First breakpoint >= t; the value is the one set by its predecessor.
                auto it = std::lower_bound(p.steps.begin(), p.steps.end(), t,
                                           [](const auto& s, double x) { return s.first < x; });
                return it == p.steps.begin() ? 0.0 : std::prev(it)->second;
            },
            [t](const Scaled& s) { return s.factor * eval(*s.inner, t); },
            [t](const MinOf& m) {
                double v = 1.0;
                for (const auto& term : m.terms)
                    v = std::min(v, eval(term, t));
                return v;
            },
        },
        f.variant());
}

double left_limit(const DistributionFn& f, double t) {
    if (std::isnan(t))
        throw std::domain_error("left_limit: argument is NaN");
    if (t == -kInf)
        throw std::domain_error("left_limit: -inf has no left neighbourhood");
    if (t == kInf)
        return limit_pos_inf(f);
    // Every representable variant is left-continuous on the reals.
    return eval(f, t);
}

double right_limit(const DistributionFn& f, double t) {
    if (std::isnan(t) || t == kInf)
        throw std::domain_error("right_limit: argument must be < +inf");
    return std::visit(
        overloaded{
            [t](const StepAt& s) { return t >= s.jump ? 1.0 : 0.0; },
            [t](const StandardRatio& r) { return t <= 0.0 ? 0.0 : t / (t + r.scale); },
            [t](const PiecewiseConstant& p) {
                auto it = std::upper_bound(p.steps.begin(), p.steps.end(), t,
                                           [](double x, const auto& s) { return x < s.first; });
                return it == p.steps.begin() ? 0.0 : std::prev(it)->second;
            },
            [t](const Scaled& s) { return s.factor * right_limit(*s.inner, t); },
            [t](const MinOf& m) {
                double v = 1.0;
                for (const auto& term : m.terms)
                    v = std::min(v, right_limit(term, t));
                return v;
            },
        },
        f.variant());
}

std::optional<bool> analytic_leq(const DistributionFn& f, const DistributionFn& g) {
    if (g.is<MinOf>()) {
        bool all = true;
        for (const auto& term : g.as<MinOf>().terms) {
            auto r = analytic_leq(f, term);
            if (r && !*r)
                return false;
            if (!r)
                all = false;
        }
        if (all)
            return true;
        return std::nullopt;
    }
    if (is_identity_step(g))
        return true;
    if (is_step_type(g)) {
        // G is constant on each (b_i, b_{i+1}], so comparing at the right
        // ends and at +inf is exact for any non-decreasing F.
        for (double b : breakpoints(g))
            if (!approx_le(eval(f, b), eval(g, b)))
                return false;
        return approx_le(limit_pos_inf(f), limit_pos_inf(g));
    }
    if (is_identity_step(f))
        return approx_le(1.0, right_limit(g, -kInf));
    if (is_step_type(f)) {
        // F is constant on each (b_i, b_{i+1}] and G is smallest at the left end.
        for (double b : breakpoints(f))
            if (!approx_le(right_limit(f, b), right_limit(g, b)))
                return false;
        return true;
    }
    auto rf = ratio_shape(f);
    auto rg = ratio_shape(g);
    if (rf && rg) {
        // c1 t/(t+a1) <= c2 t/(t+a2) for all t > 0  <=>  c1 <= c2 and c1 a2 <= c2 a1.
        const auto [c1, a1] = *rf;
        const auto [c2, a2] = *rg;
        return approx_le(c1, c2) && approx_le(c1 * a2, c2 * a1);
    }
    if (f.is<MinOf>()) {
        for (const auto& term : f.as<MinOf>().terms)
            if (analytic_leq(term, g).value_or(false))
                return true;
        return std::nullopt;
    }
    if (f.is<Scaled>() && analytic_leq(*f.as<Scaled>().inner, g).value_or(false))
        return true;
    return std::nullopt;
}

DistributionFn pointwise_min(const DistributionFn& f, const DistributionFn& g) {
    const DistributionFn both[] = {f, g};
    return pointwise_min(std::span<const DistributionFn>(both));
}

DistributionFn pointwise_min(std::span<const DistributionFn> fns) {
    if (fns.empty())
        throw std::invalid_argument("pointwise_min: no operands");

    std::vector<DistributionFn> leaves;
    for (const auto& f : fns) {
        if (f.is<MinOf>()) {
            for (const auto& t : f.as<MinOf>().terms)
                leaves.push_back(t);
        } else if (!is_identity_step(f)) {
            leaves.push_back(f);
        }
    }
    if (leaves.empty())
        return fns.front();

    std::vector<const DistributionFn*> steps;
    std::optional<double> ratio_scale;
    std::vector<DistributionFn> others;
    for (const auto& leaf : leaves) {
        if (is_step_type(leaf))
            steps.push_back(&leaf);
        else if (leaf.is<StandardRatio>())
            ratio_scale = std::max(ratio_scale.value_or(0.0), leaf.as<StandardRatio>().scale);
        else
            others.push_back(leaf);
    }

    std::vector<DistributionFn> terms;
    if (!steps.empty()) {
        std::vector<double> bps;
        for (const auto* s : steps) {
            auto b = breakpoints(*s);
            bps.insert(bps.end(), b.begin(), b.end());
        }
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        std::vector<std::pair<double, double>> merged;
        for (double b : bps) {
            double v = 1.0;
            for (const auto* s : steps)
                v = std::min(v, right_limit(*s, b));
            merged.emplace_back(b, v);
        }
        auto step = make_step_function(merged);
        if (is_zero(step))
            return step;
        terms.push_back(std::move(step));
    }
    if (ratio_scale)
        terms.push_back(DistributionFn::standard_ratio(*ratio_scale));
    std::sort(others.begin(), others.end(),
              [](const auto& a, const auto& b) { return to_string(a) < to_string(b); });
    for (auto& o : others)
        terms.push_back(std::move(o));

    // Drop every term that dominates another one.
    bool changed = true;
    while (changed && terms.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < terms.size() && !changed; ++i) {
            for (std::size_t j = 0; j < terms.size() && !changed; ++j) {
                if (i != j && analytic_leq(terms[i], terms[j]).value_or(false)) {
                    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
    }
    if (terms.size() == 1)
        return terms.front();
    return DistributionFn(MinOf{std::move(terms)});
}

DistributionFn rescale(const DistributionFn& f, double k) {
    if (!std::isfinite(k) || !(k > 0.0))
        throw std::invalid_argument("rescale: factor must be finite and > 0");
    return std::visit(
        overloaded{
            [k](const StepAt& s) { return DistributionFn::step_at(s.jump * k); },
            [k](const StandardRatio& r) { return DistributionFn::standard_ratio(r.scale * k); },
            [k](const PiecewiseConstant& p) {
                auto steps = p.steps;
                for (auto& s : steps)
                    s.first *= k;
                return steps.empty() ? DistributionFn::zero()
                                     : DistributionFn::piecewise(std::move(steps));
            },
            [k](const Scaled& s) { return DistributionFn::scaled(s.factor, rescale(*s.inner, k)); },
            [k](const MinOf& m) {
                std::vector<DistributionFn> terms;
                for (const auto& t : m.terms)
                    terms.push_back(rescale(t, k));
                return pointwise_min(terms);
            },
        },
        f.variant());
}

std::vector<double> breakpoints(const DistributionFn& f) {
    std::vector<double> out;
    std::visit(overloaded{
                   [&](const StepAt& s) {
                       if (std::isfinite(s.jump))
                           out.push_back(s.jump);
                   },
                   [&](const StandardRatio& r) {
                       out.push_back(0.0);
                       out.push_back(r.scale);
                   },
                   [&](const PiecewiseConstant& p) {
                       for (const auto& s : p.steps)
                           out.push_back(s.first);
                   },
                   [&](const Scaled& s) { out = breakpoints(*s.inner); },
                   [&](const MinOf& m) {
                       for (const auto& t : m.terms) {
                           auto b = breakpoints(t);
                           out.insert(out.end(), b.begin(), b.end());
                       }
                   },
               },
               f.variant());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> canonical_grid(const DistributionFn& f, const DistributionFn& g,
                                   std::span<const double> extra) {
    std::vector<double> bps = breakpoints(f);
    auto bg = breakpoints(g);
    bps.insert(bps.end(), bg.begin(), bg.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    std::vector<double> grid = bps;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i)
        grid.push_back(0.5 * (bps[i] + bps[i + 1]));
    if (!bps.empty()) {
        grid.push_back(bps.front() - 1.0);
        grid.push_back(bps.back() + 1.0);
    }
    for (int k = -10; k <= 20; ++k)
        grid.push_back(std::ldexp(1.0, k));
    grid.push_back(0.0);
    grid.push_back(std::ldexp(1.0, 40));
    grid.push_back(-std::ldexp(1.0, 40));
    for (double t : extra)
        if (std::isfinite(t))
            grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

OrderCertificate compare_leq(const DistributionFn& f, const DistributionFn& g,
                             std::span<const double> grid) {
    for (double t : grid)
        if (!approx_le(eval(f, t), eval(g, t)))
            return {false, Certification::Exact};
    if (auto exact = analytic_leq(f, g))
        return {*exact, Certification::Exact};
    for (double t : canonical_grid(f, g, grid)) {
        if (!approx_le(eval(f, t), eval(g, t)) || !approx_le(right_limit(f, t), right_limit(g, t)))
            return {false, Certification::Exact};
    }
    return {approx_le(limit_pos_inf(f), limit_pos_inf(g)), Certification::Grid};
}

bool leq(const DistributionFn& f, const DistributionFn& g, std::span<const double> grid) {
    if (grid.empty())
        throw std::invalid_argument("leq: grid must be non-empty");
    return compare_leq(f, g, grid).holds;
}

bool equal_on_canonical_grid(const DistributionFn& f, const DistributionFn& g, double tol) {
    for (double t : canonical_grid(f, g)) {
        if (std::abs(eval(f, t) - eval(g, t)) > tol)
            return false;
        if (std::abs(right_limit(f, t) - right_limit(g, t)) > tol)
            return false;
    }
    return std::abs(limit_pos_inf(f) - limit_pos_inf(g)) <= tol &&
           std::abs(right_limit(f, -kInf) - right_limit(g, -kInf)) <= tol;
}

Membership classify_df(const DistributionFn& f) {
    const bool plus = eval(f, 0.0) <= kClosedFormTol;
    const bool proper_top = left_limit(f, kInf) >= 1.0 - kClosedFormTol;
    const bool proper_bottom = right_limit(f, -kInf) <= kClosedFormTol;
    return Membership{
        .in_delta = true,
        .in_delta_plus = plus,
        .in_d = proper_top && proper_bottom,
        .in_d_plus = plus && proper_top,
    };
}

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

std::string to_string(const DistributionFn& f) {
    return std::visit(
        overloaded{
            [](const StepAt& s) { return "step(" + format_number(s.jump) + ")"; },
            [](const StandardRatio& r) { return "ratio(" + format_number(r.scale) + ")"; },
            [](const PiecewiseConstant& p) {
                if (p.steps.empty())
                    return std::string("zero");
                std::string out = "pc(";
                for (std::size_t i = 0; i < p.steps.size(); ++i) {
                    if (i)
                        out += ' ';
                    out += "(" + format_number(p.steps[i].first) + "," +
                           format_number(p.steps[i].second) + ")";
                }
                return out + ")";
            },
            [](const Scaled& s) {
                return "scaled(" + format_number(s.factor) + "," + to_string(*s.inner) + ")";
            },
            [](const MinOf& m) {
                std::string out = "min(";
                for (std::size_t i = 0; i < m.terms.size(); ++i) {
                    if (i)
                        out += ',';
                    out += to_string(m.terms[i]);
                }
                return out + ")";
            },
        },
        f.variant());
}

} // namespace m2pn
