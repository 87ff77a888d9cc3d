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

#include "m2pn/document.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace m2pn;

namespace {

Point to_point(const std::vector<double>& xs) {
    return Point(xs);
}

std::vector<Point> to_points(const std::vector<std::vector<double>>& xss) {
    std::vector<Point> out;
    out.reserve(xss.size());
    for (const auto& xs : xss)
        out.push_back(Point(xs));
    return out;
}

Prob2Norm space_of(const std::string& family, std::size_t dim) {
    if (family == "standard")
        return Prob2Norm::standard(dim);
    if (family == "indicator")
        return Prob2Norm::indicator(dim);
    throw py::value_error("family must be 'standard' or 'indicator'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Menger 2-probabilistic normed spaces";

    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_RuntimeError);
    py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);

    py::class_<DistributionFn>(m, "DistributionFn")
        .def_static("step_at", &DistributionFn::step_at, py::arg("jump"))
        .def_static("standard_ratio", &DistributionFn::standard_ratio, py::arg("scale"))
        .def_static("piecewise", &DistributionFn::piecewise, py::arg("steps"))
        .def_static("scaled", &DistributionFn::scaled, py::arg("factor"), py::arg("inner"))
        .def_static("zero", &DistributionFn::zero)
        .def_static("parse", [](const std::string& s) { return parse_df(s); })
        .def("__call__", [](const DistributionFn& f, double t) { return eval(f, t); })
        .def("left_limit", [](const DistributionFn& f, double t) { return left_limit(f, t); })
        .def("right_limit", [](const DistributionFn& f, double t) { return right_limit(f, t); })
        .def("breakpoints", [](const DistributionFn& f) { return breakpoints(f); })
        .def("__str__", [](const DistributionFn& f) { return to_string(f); })
        .def("__repr__", [](const DistributionFn& f) { return "DistributionFn(" + to_string(f) + ")"; });

    m.def("epsilon", &epsilon, py::arg("a"));
    m.def("pointwise_min",
          [](const DistributionFn& f, const DistributionFn& g) { return pointwise_min(f, g); });
    m.def("leq", [](const DistributionFn& f, const DistributionFn& g) {
        return compare_leq(f, g, {}).holds;
    });
    m.def("equal", [](const DistributionFn& f, const DistributionFn& g) {
        return equal_on_canonical_grid(f, g);
    });
    m.def("classify_df", [](const DistributionFn& f) {
        const auto c = classify_df(f);
        py::dict d;
        d["in_delta"] = c.in_delta;
        d["in_delta_plus"] = c.in_delta_plus;
        d["in_d"] = c.in_d;
        d["in_d_plus"] = c.in_d_plus;
        return d;
    });

    m.def("two_norm", [](const std::vector<double>& x, const std::vector<double>& y) {
        return two_norm(to_point(x), to_point(y));
    });
    m.def(
        "nu",
        [](const std::string& family, const std::vector<double>& x, const std::vector<double>& y) {
            return space_of(family, x.size()).nu(to_point(x), to_point(y));
        },
        py::arg("family"), py::arg("x"), py::arg("y"));

    m.def(
        "radius",
        [](const std::vector<std::vector<double>>& points, const std::string& family) {
            auto ps = to_points(points);
            if (ps.empty())
                throw py::value_error("empty point list");
            const auto space = space_of(family, ps.front().dim());
            return radius(FiniteSet{std::move(ps)}, space);
        },
        py::arg("points"), py::arg("family") = "standard");
    m.def(
        "classify",
        [](const DistributionFn& r) {
            const auto c = classify_radius(r);
            return py::make_tuple(std::string(to_string(c.kind)), c.limit, c.x0);
        },
        py::arg("radius"));

    m.def(
        "converges_to",
        [](const std::string& family, const std::vector<double>& limit,
           const std::vector<double>& direction, std::size_t horizon,
           const std::vector<std::vector<double>>& witnesses, double t, double alpha) {
            const auto x = to_point(limit);
            const auto seq = SequenceRule::affine(x, to_point(direction), horizon);
            const auto ws = to_points(witnesses);
            const auto v = converges_to(space_of(family, x.dim()), seq, x, ws, t, alpha);
            return py::make_tuple(v.found, v.n0);
        },
        py::arg("family"), py::arg("limit"), py::arg("direction"), py::arg("horizon"),
        py::arg("witnesses"), py::arg("t"), py::arg("alpha"));

    m.def("validate_document", [](const std::string& text) {
        return parse_document(text).checks.size();
    });
    m.def(
        "run_document",
        [](const std::string& text, std::optional<int> grid_scale,
           std::optional<std::size_t> trials, std::optional<std::uint64_t> seed) {
            const auto doc = parse_document(text);
            const auto rep = run(doc, RunOptions{grid_scale, trials, seed});
            return py::make_tuple(rep.lines, rep.exit_code);
        },
        py::arg("text"), py::arg("grid_scale") = py::none(), py::arg("trials") = py::none(),
        py::arg("seed") = py::none());
}
