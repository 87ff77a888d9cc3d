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

#include "m2pn/dbound.hpp"
#include "m2pn/sequences.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace m2pn {

/// Parse errors carry "line:col: "; validation errors name the block.
class DocumentError : public std::runtime_error {
public:
    enum class Kind { Parse, Validation };
    DocumentError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Value grammar, shared with the Python bindings. Numbers are decimal,
// p/q, inf or -inf. Distribution functions are written step(a), ratio(a),
// pc((t, v) (t, v) ...), scaled(c, F), min(F, G, ...) or zero.
double parse_number(std::string_view text);
std::vector<Point> parse_points(std::string_view text);
DistributionFn parse_df(std::string_view text);
/// As parse_df, with the symbol `a` bound to `area` wherever a number may
/// appear.
DistributionFn parse_df_template(std::string_view text, double area);

/// Custom pair map: explicit (x, y) entries, then a fallback template in
/// the pair area `a`. "ratio(a)" reproduces the standard family.
struct CustomTable {
    std::string fallback = "ratio(a)";
    std::vector<std::pair<std::pair<Point, Point>, std::string>> entries;
};

struct SpaceSpec {
    NormFamily family = NormFamily::Standard;
    std::size_t dim = 2;
    CustomTable table;

    Prob2Norm build() const;
};

struct SequenceSpec {
    std::optional<Point> limit; // affine family only
    SequenceRule rule;
};

struct AxiomsCheck {
    enum class Target { Pn, Norm, Mg2pn } target = Target::Pn;
    std::size_t trials = 1000;
    bool exact = false;
    double lo = -10.0;
    double hi = 10.0;
};

struct ClassifyCheck {
    PairSet pair; // a single set is stored as first == second
    bool single = true;
    std::optional<BoundClass> expect;
};

struct RadiusCheck {
    PairSet pair;
    bool single = true;
    std::optional<DistributionFn> expect;
};

struct ConvergeCheck {
    enum class Mode { Limit, Cauchy, Equivalence } mode = Mode::Limit;
    std::string sequence;
    std::optional<Point> target;
    std::vector<Point> witnesses;
    double t = 1.0;
    double alpha = 0.1;
};

struct SeriesCheck {
    std::string series;
    std::vector<Point> polytope;
    std::vector<Point> witnesses;
    double t = 1.0;
    double alpha = 0.1;
};

struct ClosureCheck {
    enum class Mode { Sum, PairSum, Scale } mode = Mode::Sum;
    std::vector<FiniteSet> sets; // sum: A C B; pair_sum: A B C D
    PairSet pair;                // scale
    double alpha = 1.0;
};

struct CheckSpec {
    std::string id;
    std::variant<AxiomsCheck, ClassifyCheck, RadiusCheck, ConvergeCheck, SeriesCheck, ClosureCheck>
        body;
};

struct Document {
    std::uint64_t seed = kDefaultSeed;
    SpaceSpec space;
    std::map<std::string, SequenceSpec> sequences;
    std::map<std::string, ConvexSeries> series;
    std::vector<CheckSpec> checks;
};

/// Parses and validates. Throws DocumentError.
Document parse_document(std::string_view text);

struct RunOptions {
    std::optional<int> grid_scale; // grid points per octave, default 1
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
};

struct Report {
    std::vector<std::string> lines;
    int exit_code = 0; // 0 if no FAIL line, else 1

    std::string text() const;
};

Report run(const Document& doc, const RunOptions& options = {});

} // namespace m2pn
