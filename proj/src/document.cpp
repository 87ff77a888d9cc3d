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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace m2pn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown inside the value grammar; `offset` is relative to the value text.
struct ValueError {
    std::size_t offset;
    std::string message;
};

class Cursor {
public:
    Cursor(std::string_view s, const double* area) : s_(s), area_(area) {}

    void ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t'))
            ++i_;
    }
    bool eof() {
        ws();
        return i_ >= s_.size();
    }
    char peek() {
        ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c)
            return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::size_t pos() const noexcept { return i_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ValueError{i_, msg}; }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        throw ValueError{at, msg};
    }

    std::string_view ident() {
        ws();
        const std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        return s_.substr(start, i_ - start);
    }

    double number() {
        ws();
        const std::size_t start = i_;
        double sign = 1.0;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            sign = s_[i_] == '-' ? -1.0 : 1.0;
            ++i_;
        }
        if (s_.substr(i_, 3) == "inf") {
            i_ += 3;
            return sign * kInf;
        }
        if (area_ && i_ < s_.size() && s_[i_] == 'a' &&
            (i_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[i_ + 1])))) {
            ++i_;
            return sign * *area_;
        }
        const double num = unsigned_decimal(start);
        if (i_ < s_.size() && s_[i_] == '/') {
            ++i_;
            const std::size_t den_at = i_;
            const double den = unsigned_decimal(den_at);
            if (den == 0.0)
                fail_at(den_at, "zero denominator");
            return sign * num / den;
        }
        return sign * num;
    }

    Point point() {
        const std::size_t start = (ws(), i_);
        expect('(');
        std::vector<double> xs{number()};
        while (accept(','))
            xs.push_back(number());
        expect(')');
        try {
            return Point(std::move(xs));
        } catch (const std::invalid_argument& e) {
            fail_at(start, e.what());
        }
    }

    std::vector<Point> points() {
        std::vector<Point> out;
        while (peek() == '(')
            out.push_back(point());
        if (out.empty())
            fail("expected a point '(x, y, ...)'");
        for (const auto& p : out)
            if (p.dim() != out.front().dim())
                fail("points of different dimensions");
        return out;
    }

    DistributionFn df() {
        ws();
        const std::size_t start = i_;
        const std::string name(ident());
        try {
            if (name == "zero")
                return DistributionFn::zero();
            if (name == "step" || name == "ratio") {
                expect('(');
                const double a = number();
                expect(')');
                return name == "step" ? DistributionFn::step_at(a)
                                      : DistributionFn::standard_ratio(a);
            }
            if (name == "pc") {
                expect('(');
                std::vector<std::pair<double, double>> steps;
                while (accept('(')) {
                    const double t = number();
                    expect(',');
                    const double v = number();
                    expect(')');
                    steps.emplace_back(t, v);
                }
                expect(')');
                return DistributionFn::piecewise(std::move(steps));
            }
            if (name == "scaled") {
                expect('(');
                const double c = number();
                expect(',');
                auto inner = df();
                expect(')');
                return DistributionFn::scaled(c, inner);
            }
            if (name == "min") {
                expect('(');
                std::vector<DistributionFn> terms{df()};
                while (accept(','))
                    terms.push_back(df());
                expect(')');
                return pointwise_min(terms);
            }
        } catch (const std::invalid_argument& e) {
            fail_at(start, e.what());
        } catch (const std::domain_error& e) {
            fail_at(start, e.what());
        }
        fail_at(start, "unknown distribution function '" + name + "'");
    }

private:
    double unsigned_decimal(std::size_t err_at) {
        const std::size_t start = i_;
        while (i_ < s_.size()) {
            const char c = s_[i_];
            const bool exp_sign = (c == '+' || c == '-') && i_ > start &&
                                  (s_[i_ - 1] == 'e' || s_[i_ - 1] == 'E');
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' ||
                  c == 'E' || exp_sign))
                break;
            ++i_;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
        if (start == i_ || ec != std::errc() || ptr != s_.data() + i_)
            fail_at(err_at, "expected a number");
        return v;
    }

    std::string_view s_;
    const double* area_;
    std::size_t i_ = 0;
};

template <class F>
auto standalone(std::string_view text, const double* area, F&& body) {
    Cursor c(text, area);
    try {
        auto v = body(c);
        if (!c.eof())
            c.fail("unexpected trailing text");
        return v;
    } catch (const ValueError& e) {
        throw DocumentError(DocumentError::Kind::Parse,
                            "col " + std::to_string(e.offset + 1) + ": " + e.message);
    }
}

// ---- raw block structure ---------------------------------------------------

struct Entry {
    std::string key;
    std::string value;
    int line;
    int col; // 1-based column of the value
};

struct Block {
    std::string kind;
    std::string id;
    int line = 0;
    std::vector<Entry> entries;
};

[[noreturn]] void parse_error(int line, int col, const std::string& msg) {
    throw DocumentError(DocumentError::Kind::Parse,
                        std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::string_view trim(std::string_view s, std::size_t& lead) {
    lead = 0;
    while (lead < s.size() && (s[lead] == ' ' || s[lead] == '\t'))
        ++lead;
    std::size_t end = s.size();
    while (end > lead && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r'))
        --end;
    return s.substr(lead, end - lead);
}

bool valid_id(std::string_view id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
}

std::vector<Block> split_blocks(std::string_view text) {
    std::vector<Block> blocks(1); // blocks[0]: global entries
    int line_no = 0;
    std::size_t at = 0;
    while (at <= text.size()) {
        const std::size_t nl = text.find('\n', at);
        std::string_view raw =
            text.substr(at, nl == std::string_view::npos ? std::string_view::npos : nl - at);
        at = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        std::size_t lead = 0;
        const std::string_view line = trim(raw, lead);
        if (line.empty())
            continue;
        const int col = static_cast<int>(lead) + 1;
        if (line.front() == '[') {
            if (line.back() != ']')
                parse_error(line_no, col + static_cast<int>(line.size()) - 1,
                            "expected ']' closing the block header");
            std::size_t inner_lead = 0;
            const std::string_view inner = trim(line.substr(1, line.size() - 2), inner_lead);
            const auto sp = inner.find_first_of(" \t");
            Block b;
            b.line = line_no;
            b.kind = std::string(inner.substr(0, sp));
            if (sp != std::string_view::npos) {
                std::size_t id_lead = 0;
                b.id = std::string(trim(inner.substr(sp), id_lead));
                if (!valid_id(b.id))
                    parse_error(line_no, col + 1 + static_cast<int>(inner_lead + sp + id_lead),
                                "invalid block id '" + b.id + "'");
            }
            if (b.kind.empty())
                parse_error(line_no, col + 1, "empty block header");
            blocks.push_back(std::move(b));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            parse_error(line_no, col, "expected 'key = value' or a '[block]' header");
        std::size_t key_lead = 0, val_lead = 0;
        const std::string_view key = trim(line.substr(0, eq), key_lead);
        const std::string_view value = trim(line.substr(eq + 1), val_lead);
        if (!valid_id(key))
            parse_error(line_no, col, "invalid key");
        if (value.empty())
            parse_error(line_no, col + static_cast<int>(eq) + 1, "missing value");
        blocks.back().entries.push_back({std::string(key), std::string(value), line_no,
                                         col + static_cast<int>(eq + 1 + val_lead)});
    }
    return blocks;
}

// ---- typed access ------------------------------------------------------------

class BlockView {
public:
    BlockView(const Block& b, std::set<std::string> allowed, std::set<std::string> repeatable = {})
        : b_(b) {
        std::set<std::string> seen;
        for (const auto& e : b.entries) {
            if (!allowed.count(e.key))
                parse_error(e.line, e.col, "unknown key '" + e.key + "' in " + name());
            if (!repeatable.count(e.key) && !seen.insert(e.key).second)
                parse_error(e.line, e.col, "duplicate key '" + e.key + "'");
        }
    }

    std::string name() const {
        if (b_.kind.empty())
            return "the global section";
        return b_.id.empty() ? "block " + b_.kind : "block " + b_.kind + " '" + b_.id + "'";
    }

    const Entry* find(const std::string& key) const {
        for (const auto& e : b_.entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }
    std::vector<const Entry*> all(const std::string& key) const {
        std::vector<const Entry*> out;
        for (const auto& e : b_.entries)
            if (e.key == key)
                out.push_back(&e);
        return out;
    }
    const Entry& require(const std::string& key) const {
        if (const Entry* e = find(key))
            return *e;
        invalid("missing key '" + key + "'");
    }
    [[noreturn]] void invalid(const std::string& msg) const {
        throw DocumentError(DocumentError::Kind::Validation,
                            name() + " (line " + std::to_string(b_.line) + "): " + msg);
    }

private:
    const Block& b_;
};

template <class F>
auto in_value(const Entry& e, F&& body) {
    Cursor c(e.value, nullptr);
    try {
        auto v = body(c);
        if (!c.eof())
            c.fail("unexpected trailing text");
        return v;
    } catch (const ValueError& err) {
        parse_error(e.line, e.col + static_cast<int>(err.offset), err.message);
    }
}

double number_of(const Entry& e) {
    return in_value(e, [](Cursor& c) { return c.number(); });
}

std::vector<Point> points_of(const Entry& e) {
    return in_value(e, [](Cursor& c) { return c.points(); });
}

Point point_of(const Entry& e) {
    return in_value(e, [](Cursor& c) { return c.point(); });
}

DistributionFn df_of(const Entry& e) {
    return in_value(e, [](Cursor& c) { return c.df(); });
}

std::string word_of(const Entry& e) {
    return in_value(e, [](Cursor& c) {
        auto w = std::string(c.ident());
        if (w.empty())
            c.fail("expected a word");
        return w;
    });
}

std::vector<std::string> ids_of(const Entry& e) {
    std::vector<std::string> out;
    std::istringstream in(e.value);
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

std::size_t count_of(const Entry& e, std::size_t lo) {
    const double v = number_of(e);
    if (!(v >= static_cast<double>(lo)) || v != std::floor(v) || v > 1e9)
        parse_error(e.line, e.col, "expected an integer >= " + std::to_string(lo));
    return static_cast<std::size_t>(v);
}

bool bool_of(const Entry& e) {
    const auto w = word_of(e);
    if (w == "true")
        return true;
    if (w == "false")
        return false;
    parse_error(e.line, e.col, "expected true or false");
}

void check_template(const Entry& e) {
    for (double a : {0.0, 1.0}) {
        Cursor c(e.value, &a);
        try {
            c.df();
            if (!c.eof())
                c.fail("unexpected trailing text");
        } catch (const ValueError& err) {
            parse_error(e.line, e.col + static_cast<int>(err.offset), err.message);
        }
    }
}

std::optional<BoundClass> bound_class_from(std::string_view w) {
    for (auto c : {BoundClass::CertainlyBounded, BoundClass::PerhapsBounded,
                   BoundClass::PerhapsUnbounded, BoundClass::CertainlyUnbounded})
        if (to_string(c) == w)
            return c;
    return std::nullopt;
}

// ---- document assembly -------------------------------------------------------

struct Builder {
    Document doc;
    std::map<std::string, SetDescriptor> sets;

    void require_dim(const BlockView& v, const Point& p) const {
        if (p.dim() != doc.space.dim)
            v.invalid("point " + to_string(p) + " has dimension " + std::to_string(p.dim()) +
                      ", the space has " + std::to_string(doc.space.dim));
    }
    void require_dim(const BlockView& v, const std::vector<Point>& ps) const {
        for (const auto& p : ps)
            require_dim(v, p);
    }

    void space(const Block& b) {
        BlockView v(b, {"family", "dimension", "default", "pair"}, {"pair"});
        const auto fam = word_of(v.require("family"));
        if (fam == "standard")
            doc.space.family = NormFamily::Standard;
        else if (fam == "indicator")
            doc.space.family = NormFamily::Indicator;
        else if (fam == "custom")
            doc.space.family = NormFamily::Custom;
        else
            parse_error(v.require("family").line, v.require("family").col,
                        "family must be standard, indicator or custom");
        doc.space.dim = count_of(v.require("dimension"), 2);
        const bool custom = doc.space.family == NormFamily::Custom;
        if (!custom && (v.find("default") || v.find("pair")))
            v.invalid("'default' and 'pair' apply to custom spaces only");
        if (const Entry* e = v.find("default")) {
            check_template(*e);
            doc.space.table.fallback = e->value;
        }
        for (const Entry* e : v.all("pair")) {
            const auto colon = e->value.find(':');
            if (colon == std::string::npos)
                parse_error(e->line, e->col, "expected '(x) (y) : distribution function'");
            Entry pts = *e;
            pts.value = e->value.substr(0, colon);
            Entry fn = *e;
            fn.value = e->value.substr(colon + 1);
            fn.col = e->col + static_cast<int>(colon) + 1;
            const auto ps = points_of(pts);
            if (ps.size() != 2)
                parse_error(e->line, e->col, "a pair entry needs exactly two points");
            require_dim(v, ps);
            check_template(fn);
            doc.space.table.entries.push_back({{ps[0], ps[1]}, fn.value});
        }
    }

    void set(const Block& b) {
        BlockView v(b, {"points", "analytic", "area_sup", "radius_rule"});
        const int kinds = !!v.find("points") + !!v.find("analytic") + !!v.find("radius_rule");
        if (kinds != 1)
            v.invalid("exactly one of points, analytic, radius_rule is required");
        if (const Entry* e = v.find("points")) {
            if (v.find("area_sup"))
                v.invalid("area_sup applies to analytic sets only");
            auto ps = points_of(*e);
            require_dim(v, ps);
            sets.emplace(b.id, FiniteSet{std::move(ps)});
        } else if (const Entry* e = v.find("analytic")) {
            const auto fam = word_of(*e);
            const double sup = number_of(v.require("area_sup"));
            if (!(sup >= 0.0))
                v.invalid("area_sup must be >= 0 or inf");
            if (fam == "standard") {
                if (doc.space.family != NormFamily::Standard)
                    v.invalid("a standard analytic set needs a standard space");
                sets.emplace(b.id, AnalyticSet::standard(sup));
            } else if (fam == "indicator") {
                if (doc.space.family != NormFamily::Indicator)
                    v.invalid("an indicator analytic set needs an indicator space");
                sets.emplace(b.id, AnalyticSet::indicator(sup));
            } else {
                parse_error(e->line, e->col, "analytic must be standard or indicator");
            }
        } else {
            if (v.find("area_sup"))
                v.invalid("area_sup does not apply to radius_rule sets");
            sets.emplace(b.id, AnalyticSet::custom_rule(df_of(v.require("radius_rule"))));
        }
    }

    void sequence(const Block& b) {
        BlockView v(b, {"limit", "direction", "horizon", "points"});
        if (const Entry* e = v.find("points")) {
            if (v.find("limit") || v.find("direction") || v.find("horizon"))
                v.invalid("a listed sequence takes only 'points'");
            auto ps = points_of(*e);
            require_dim(v, ps);
            doc.sequences.emplace(b.id, SequenceSpec{std::nullopt, SequenceRule::from_list(ps)});
            return;
        }
        const Point limit = point_of(v.require("limit"));
        const Point dir = point_of(v.require("direction"));
        require_dim(v, limit);
        require_dim(v, dir);
        const std::size_t horizon = v.find("horizon") ? count_of(*v.find("horizon"), 1) : 100;
        doc.sequences.emplace(b.id,
                              SequenceSpec{limit, SequenceRule::affine(limit, dir, horizon)});
    }

    void series(const Block& b) {
        BlockView v(b, {"points", "weights", "horizon"});
        auto ps = points_of(v.require("points"));
        require_dim(v, ps);
        std::optional<std::size_t> horizon;
        if (const Entry* e = v.find("horizon"))
            horizon = count_of(*e, 1);
        const Entry* w = v.find("weights");
        if (!w || w->value == "geometric") {
            if (horizon && *horizon > 1000)
                v.invalid("geometric horizon above 1000");
            doc.series.emplace(b.id, ConvexSeries::geometric(std::move(ps), horizon.value_or(30)));
            return;
        }
        const auto ws = in_value(*w, [](Cursor& c) {
            std::vector<double> out{c.number()};
            while (!c.eof())
                out.push_back(c.number());
            return out;
        });
        double total = 0.0;
        for (double x : ws) {
            if (!(x >= 0.0) || !std::isfinite(x))
                v.invalid("weights must be finite and >= 0");
            total += x;
        }
        if (!(total > 0.0))
            v.invalid("weights sum to zero");
        doc.series.emplace(b.id, ConvexSeries::weighted(ws, std::move(ps), horizon));
    }

    const SetDescriptor& set_ref(const BlockView& v, const std::string& id) const {
        const auto it = sets.find(id);
        if (it == sets.end())
            v.invalid("unknown set '" + id + "'");
        return it->second;
    }

    FiniteSet finite_ref(const BlockView& v, const std::string& id) const {
        const auto& s = set_ref(v, id);
        if (!std::holds_alternative<FiniteSet>(s))
            v.invalid("set '" + id + "' must be a finite point list");
        return std::get<FiniteSet>(s);
    }

    std::pair<PairSet, bool> pair_ref(const BlockView& v) const {
        const Entry* s = v.find("set");
        const Entry* p = v.find("pair");
        if (!!s == !!p)
            v.invalid("exactly one of 'set' and 'pair' is required");
        if (s) {
            if (v.find("cross"))
                v.invalid("'cross' applies to pair sets only");
            const auto ids = ids_of(*s);
            if (ids.size() != 1)
                v.invalid("'set' takes one set id");
            const auto& a = set_ref(v, ids[0]);
            return {PairSet{a, a, std::nullopt}, true};
        }
        const auto ids = ids_of(*p);
        if (ids.size() != 2)
            v.invalid("'pair' takes two set ids");
        PairSet out{set_ref(v, ids[0]), set_ref(v, ids[1]), std::nullopt};
        const bool finite = std::holds_alternative<FiniteSet>(out.first) &&
                            std::holds_alternative<FiniteSet>(out.second);
        if (const Entry* c = v.find("cross")) {
            const auto cid = ids_of(*c);
            if (cid.size() != 1)
                v.invalid("'cross' takes one set id");
            const auto& cs = set_ref(v, cid[0]);
            if (!std::holds_alternative<AnalyticSet>(cs))
                v.invalid("cross set '" + cid[0] + "' must be analytic");
            out.cross = std::get<AnalyticSet>(cs);
        } else if (!finite) {
            v.invalid("a pair with an analytic component needs 'cross'");
        }
        return {out, false};
    }

    std::vector<Point> witnesses(const BlockView& v) const {
        auto ws = points_of(v.require("witnesses"));
        require_dim(v, ws);
        return ws;
    }

    double positive(const BlockView& v, const char* key, double fallback) const {
        const Entry* e = v.find(key);
        if (!e)
            return fallback;
        const double x = number_of(*e);
        if (!(x > 0.0) || !std::isfinite(x))
            v.invalid(std::string(key) + " must be finite and > 0");
        return x;
    }

    double level(const BlockView& v) const {
        const Entry* e = v.find("alpha");
        if (!e)
            return 0.1;
        const double x = number_of(*e);
        if (!(x > 0.0 && x < 1.0))
            v.invalid("alpha must lie in (0, 1)");
        return x;
    }

    void check(const Block& b) {
        if (b.id.empty())
            BlockView(b, {"kind"}).invalid("a check block needs an id");
        const Entry* k = nullptr;
        for (const auto& e : b.entries)
            if (e.key == "kind")
                k = &e;
        if (!k)
            BlockView(b, {}).invalid("missing key 'kind'");
        const auto kind = word_of(*k);
        CheckSpec spec{b.id, AxiomsCheck{}};

        if (kind == "axioms") {
            BlockView v(b, {"kind", "target", "trials", "exact", "range"});
            AxiomsCheck c;
            if (const Entry* e = v.find("target")) {
                const auto w = word_of(*e);
                if (w == "pn")
                    c.target = AxiomsCheck::Target::Pn;
                else if (w == "norm")
                    c.target = AxiomsCheck::Target::Norm;
                else if (w == "mg2pn")
                    c.target = AxiomsCheck::Target::Mg2pn;
                else
                    parse_error(e->line, e->col, "target must be pn, norm or mg2pn");
            }
            if (const Entry* e = v.find("trials"))
                c.trials = count_of(*e, 1);
            if (const Entry* e = v.find("exact"))
                c.exact = bool_of(*e);
            if (c.exact && (c.target != AxiomsCheck::Target::Norm || doc.space.dim != 2))
                v.invalid("exact mode applies to target = norm in dimension 2");
            if (const Entry* e = v.find("range")) {
                const auto r = in_value(*e, [](Cursor& cur) {
                    const double lo = cur.number();
                    const double hi = cur.number();
                    return std::pair{lo, hi};
                });
                if (!(r.first < r.second) || !std::isfinite(r.first) || !std::isfinite(r.second))
                    v.invalid("range must be 'lo hi' with lo < hi");
                c.lo = r.first;
                c.hi = r.second;
            }
            spec.body = c;
        } else if (kind == "classify" || kind == "radius") {
            BlockView v(b, {"kind", "set", "pair", "cross", "expect"});
            auto [pair, single] = pair_ref(v);
            if (kind == "classify") {
                ClassifyCheck c{pair, single, std::nullopt};
                if (const Entry* e = v.find("expect")) {
                    c.expect = bound_class_from(word_of(*e));
                    if (!c.expect)
                        parse_error(e->line, e->col, "unknown class '" + e->value + "'");
                }
                spec.body = c;
            } else {
                RadiusCheck c{pair, single, std::nullopt};
                if (const Entry* e = v.find("expect"))
                    c.expect = df_of(*e);
                spec.body = c;
            }
        } else if (kind == "converge") {
            BlockView v(b, {"kind", "mode", "sequence", "target", "witnesses", "t", "alpha"});
            ConvergeCheck c;
            if (const Entry* e = v.find("mode")) {
                const auto w = word_of(*e);
                if (w == "limit")
                    c.mode = ConvergeCheck::Mode::Limit;
                else if (w == "cauchy")
                    c.mode = ConvergeCheck::Mode::Cauchy;
                else if (w == "equivalence")
                    c.mode = ConvergeCheck::Mode::Equivalence;
                else
                    parse_error(e->line, e->col, "mode must be limit, cauchy or equivalence");
            }
            const auto ids = ids_of(v.require("sequence"));
            if (ids.size() != 1 || !doc.sequences.count(ids[0]))
                v.invalid("unknown sequence '" + v.require("sequence").value + "'");
            c.sequence = ids[0];
            if (const Entry* e = v.find("target")) {
                c.target = point_of(*e);
                require_dim(v, *c.target);
            } else {
                c.target = doc.sequences.at(c.sequence).limit;
            }
            if (!c.target && c.mode != ConvergeCheck::Mode::Cauchy)
                v.invalid("a listed sequence needs an explicit 'target'");
            c.witnesses = witnesses(v);
            c.t = positive(v, "t", 1.0);
            c.alpha = level(v);
            spec.body = c;
        } else if (kind == "series") {
            BlockView v(b, {"kind", "series", "polytope", "witnesses", "t", "alpha"});
            SeriesCheck c;
            const auto ids = ids_of(v.require("series"));
            if (ids.size() != 1 || !doc.series.count(ids[0]))
                v.invalid("unknown series '" + v.require("series").value + "'");
            c.series = ids[0];
            const auto& s = doc.series.at(c.series);
            if (const Entry* e = v.find("polytope")) {
                c.polytope = points_of(*e);
                require_dim(v, c.polytope);
            } else {
                c.polytope.assign(s.cycle().begin(), s.cycle().end());
            }
            c.witnesses = witnesses(v);
            c.t = positive(v, "t", 1.0);
            c.alpha = level(v);
            spec.body = c;
        } else if (kind == "closure") {
            BlockView v(b, {"kind", "mode", "a", "b", "c", "d", "pair", "cross", "alpha"});
            ClosureCheck c;
            const auto mode = word_of(v.require("mode"));
            if (mode == "sum") {
                c.mode = ClosureCheck::Mode::Sum;
                for (const char* key : {"a", "c", "b"})
                    c.sets.push_back(finite_ref(v, v.require(key).value));
            } else if (mode == "pair_sum") {
                c.mode = ClosureCheck::Mode::PairSum;
                for (const char* key : {"a", "b", "c", "d"})
                    c.sets.push_back(finite_ref(v, v.require(key).value));
            } else if (mode == "scale") {
                c.mode = ClosureCheck::Mode::Scale;
                if (v.find("set"))
                    v.invalid("scale takes 'pair'");
                c.pair = pair_ref(v).first;
                c.alpha = number_of(v.require("alpha"));
                if (c.alpha == 0.0 || !std::isfinite(c.alpha))
                    v.invalid("alpha must be finite and non-zero");
            } else {
                parse_error(v.require("mode").line, v.require("mode").col,
                            "mode must be sum, pair_sum or scale");
            }
            spec.body = c;
        } else {
            parse_error(k->line, k->col, "unknown check kind '" + kind + "'");
        }
        doc.checks.push_back(std::move(spec));
    }
};

// ---- running ---------------------------------------------------------------

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

struct Emitter {
    Report& report;
    const std::string& id;

    void result(std::string_view status, const std::string& kv) {
        std::string line = "RESULT " + id + " " + std::string(status);
        if (!kv.empty())
            line += " " + kv;
        report.lines.push_back(std::move(line));
        if (status == "FAIL")
            report.exit_code = 1;
    }
    void ce(const std::string& tuple) { report.lines.push_back("CE " + tuple); }
};

std::string kv(std::initializer_list<std::pair<std::string_view, std::string>> items) {
    std::string out;
    for (const auto& [k, v] : items) {
        if (!out.empty())
            out += ' ';
        out += std::string(k) + "=" + v;
    }
    return out;
}

std::string_view target_name(AxiomsCheck::Target t) {
    switch (t) {
    case AxiomsCheck::Target::Pn:
        return "pn";
    case AxiomsCheck::Target::Norm:
        return "norm";
    case AxiomsCheck::Target::Mg2pn:
        return "mg2pn";
    }
    return "?";
}

struct Runner {
    const Document& doc;
    Prob2Norm space;
    std::vector<double> grid;
    std::optional<std::size_t> trials;
    std::uint64_t seed;
    Report report;

    void operator()(const std::string& id, const AxiomsCheck& c) {
        Emitter out{report, id};
        const std::size_t n = trials.value_or(c.trials);
        const auto sampler = uniform_sampler(doc.space.dim, c.lo, c.hi);
        std::vector<AxiomReport> reps;
        switch (c.target) {
        case AxiomsCheck::Target::Pn:
            reps = check_2pn_axioms(space, sampler, grid, grid, n, seed);
            break;
        case AxiomsCheck::Target::Norm:
            reps = c.exact ? check_2norm_axioms_exact(n, 20, 6, seed)
                           : check_2norm_axioms(sampler, n, kSampledTol, seed);
            break;
        case AxiomsCheck::Target::Mg2pn:
            reps = check_mg2pn_axioms(space, sampler, grid, grid, n, seed);
            break;
        }
        std::string failing;
        std::size_t failures = 0;
        for (const auto& r : reps) {
            if (r.passed())
                continue;
            failing += (failing.empty() ? "" : ",") + r.axiom;
            failures += r.failure_count;
        }
        std::string tail = kv({{"target", std::string(target_name(c.target))},
                               {"trials", std::to_string(n)}});
        if (c.exact)
            tail += " exact=true";
        if (failing.empty()) {
            out.result("PASS", tail);
            return;
        }
        out.result("FAIL", kv({{"axiom", failing}, {"failures", std::to_string(failures)}}) +
                               " " + tail);
        for (const auto& r : reps)
            for (const auto& f : r.failures)
                out.ce(r.axiom + " " + f);
    }

    DistributionFn radius_for(const PairSet& p, bool single) const {
        return single ? radius(p.first, space) : pair_radius(p, space);
    }

    void operator()(const std::string& id, const ClassifyCheck& c) {
        Emitter out{report, id};
        const auto cls = classify_radius(radius_for(c.pair, c.single));
        std::string tail = kv({{"class", std::string(to_string(cls.kind))},
                               {"limit", format_number(cls.limit)}});
        if (cls.x0)
            tail += " x0=" + format_number(*cls.x0);
        if (c.expect && *c.expect != cls.kind) {
            out.result("FAIL", tail + " expected=" + std::string(to_string(*c.expect)));
            return;
        }
        out.result("PASS", tail);
    }

    void operator()(const std::string& id, const RadiusCheck& c) {
        Emitter out{report, id};
        const auto r = radius_for(c.pair, c.single);
        const std::string tail = "radius=" + to_string(r);
        if (c.expect && !equal_on_canonical_grid(r, *c.expect)) {
            out.result("FAIL", tail + " expected=" + to_string(*c.expect));
            return;
        }
        out.result("PASS", tail);
    }

    void operator()(const std::string& id, const ConvergeCheck& c) {
        Emitter out{report, id};
        const auto& seq = doc.sequences.at(c.sequence).rule;
        if (c.mode == ConvergeCheck::Mode::Equivalence) {
            const auto rep = norm_equivalence(seq, *c.target, c.witnesses, c.alpha, c.t);
            const auto& first = rep.witnesses.front();
            std::string tail = kv({{"agree", rep.agree ? "true" : "false"},
                                   {"horizon", std::to_string(seq.horizon())}});
            if (first.by_nu.found)
                tail += " n0=" + std::to_string(first.by_nu.n0);
            if (!rep.agree) {
                out.result("FAIL", tail);
                for (const auto& w : rep.witnesses)
                    if (!w.agree)
                        out.ce("z=" + to_string(w.witness) +
                               " by_area=" + (w.by_area.found ? "converged" : "exhausted") +
                               " by_nu=" + (w.by_nu.found ? "converged" : "exhausted"));
                return;
            }
            const bool all_found =
                std::all_of(rep.witnesses.begin(), rep.witnesses.end(),
                            [](const WitnessAgreement& w) { return w.by_nu.found; });
            out.result(all_found ? "PASS" : "EXHAUSTED", tail);
            return;
        }
        const auto verdict = c.mode == ConvergeCheck::Mode::Limit
                                 ? converges_to(space, seq, *c.target, c.witnesses, c.t, c.alpha)
                                 : is_cauchy(space, seq, c.witnesses, c.t, c.alpha);
        const std::string mode = c.mode == ConvergeCheck::Mode::Limit ? "limit" : "cauchy";
        if (!verdict.found) {
            out.result("EXHAUSTED", kv({{"mode", mode}, {"horizon", std::to_string(verdict.horizon)}}));
            return;
        }
        out.result("PASS", kv({{"mode", mode},
                               {"n0", std::to_string(verdict.n0)},
                               {"horizon", std::to_string(verdict.horizon)},
                               {"certificate", format_number(verdict.certificate)}}));
    }

    void operator()(const std::string& id, const SeriesCheck& c) {
        Emitter out{report, id};
        const auto& s = doc.series.at(c.series);
        const auto rep = convex_series_closed_probe(space, c.polytope, s, c.witnesses, c.t, c.alpha);
        const std::string horizon = std::to_string(s.horizon());
        if (rep.status == ProbeStatus::NotConverged) {
            out.result("EXHAUSTED", kv({{"horizon", horizon}}));
            return;
        }
        const std::string tail = kv({{"n0", std::to_string(rep.verdict.cauchy.n0)},
                                     {"horizon", horizon},
                                     {"distance", format_number(rep.distance)},
                                     {"tolerance", format_number(rep.tolerance)}});
        if (rep.status == ProbeStatus::Outside) {
            out.result("FAIL", "status=outside " + tail);
            out.ce("limit=" + to_string(rep.verdict.limit_estimate));
            return;
        }
        out.result("PASS", "status=inside " + tail);
    }

    void operator()(const std::string& id, const ClosureCheck& c) {
        Emitter out{report, id};
        if (c.mode == ClosureCheck::Mode::Scale) {
            const bool ok = scaling_closure_check(c.alpha, c.pair, space);
            const auto scaled = pair_radius(scale_pair(c.alpha, c.pair), space);
            out.result(ok ? "PASS" : "FAIL",
                       kv({{"mode", "scale"},
                           {"alpha", format_number(c.alpha)},
                           {"radius", to_string(scaled)}}));
            return;
        }
        const auto rep = c.mode == ClosureCheck::Mode::Sum
                             ? sum_closure_check(c.sets[0], c.sets[1], c.sets[2], space, {})
                             : pair_sum_closure_check(c.sets[0], c.sets[1], c.sets[2],
                                                      c.sets[3], space, {});
        const std::string tail =
            kv({{"mode", c.mode == ClosureCheck::Mode::Sum ? "sum" : "pair_sum"},
                {"conclusion", rep.conclusion ? "true" : "false"},
                {"min_inequality", rep.min_inequality ? "true" : "false"},
                {"split_inequality", rep.split_inequality ? "true" : "false"}});
        out.result(rep.passed() ? "PASS" : "FAIL", tail);
        if (rep.violation_t)
            out.ce(kv({{"t", format_number(*rep.violation_t)},
                       {"sum_radius", format_number(rep.violation_lhs)},
                       {"bound", format_number(rep.violation_rhs)}}));
    }
};

} // namespace

double parse_number(std::string_view text) {
    return standalone(text, nullptr, [](Cursor& c) { return c.number(); });
}

std::vector<Point> parse_points(std::string_view text) {
    return standalone(text, nullptr, [](Cursor& c) { return c.points(); });
}

DistributionFn parse_df(std::string_view text) {
    return standalone(text, nullptr, [](Cursor& c) { return c.df(); });
}

DistributionFn parse_df_template(std::string_view text, double area) {
    return standalone(text, &area, [](Cursor& c) { return c.df(); });
}

Prob2Norm SpaceSpec::build() const {
    switch (family) {
    case NormFamily::Standard:
        return Prob2Norm::standard(dim);
    case NormFamily::Indicator:
        return Prob2Norm::indicator(dim);
    case NormFamily::Custom:
        break;
    }
    auto tbl = std::make_shared<const CustomTable>(table);
    return Prob2Norm::custom(dim, [tbl](const Point& x, const Point& y) {
        const double area = two_norm(x, y);
        for (const auto& [key, fn] : tbl->entries)
            if (key.first == x && key.second == y)
                return parse_df_template(fn, area);
        return parse_df_template(tbl->fallback, area);
    });
}

Document parse_document(std::string_view text) {
    const auto blocks = split_blocks(text);
    Builder b;

    BlockView global(blocks[0], {"seed"});
    if (const Entry* e = global.find("seed")) {
        const double s = number_of(*e);
        if (!(s >= 0.0) || s != std::floor(s) || s >= 18446744073709551616.0)
            parse_error(e->line, e->col, "seed must be a non-negative integer");
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (ec != std::errc() || ptr != e->value.data() + e->value.size())
            parse_error(e->line, e->col, "seed must be a non-negative integer");
        b.doc.seed = v;
    }

    static const std::set<std::string> kinds = {"space", "set", "sequence", "series", "check"};
    const Block* space = nullptr;
    std::set<std::pair<std::string, std::string>> ids;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const auto& blk = blocks[i];
        if (!kinds.count(blk.kind))
            parse_error(blk.line, 2, "unknown block kind '" + blk.kind + "'");
        if (blk.kind == "space") {
            if (!blk.id.empty())
                parse_error(blk.line, 2, "the space block takes no id");
            if (space)
                BlockView(blk, {"family", "dimension", "default", "pair"}, {"pair"})
                    .invalid("second space block");
            space = &blk;
            continue;
        }
        if (blk.id.empty())
            parse_error(blk.line, 2, "block '" + blk.kind + "' needs an id");
        const std::string ns = blk.kind == "check" ? "check" : "data";
        if (!ids.insert({ns, blk.id}).second)
            throw DocumentError(DocumentError::Kind::Validation,
                                "block " + blk.kind + " '" + blk.id + "' (line " +
                                    std::to_string(blk.line) + "): duplicate id");
    }
    if (!space)
        throw DocumentError(DocumentError::Kind::Validation, "missing [space] block");
    b.space(*space);

    for (const char* kind : {"set", "sequence", "series", "check"}) {
        for (std::size_t i = 1; i < blocks.size(); ++i) {
            const auto& blk = blocks[i];
            if (blk.kind != kind)
                continue;
            if (blk.kind == "set")
                b.set(blk);
            else if (blk.kind == "sequence")
                b.sequence(blk);
            else if (blk.kind == "series")
                b.series(blk);
            else
                b.check(blk);
        }
    }
    return std::move(b.doc);
}

std::string Report::text() const {
    std::string out;
    for (const auto& l : lines)
        out += l + "\n";
    return out;
}

Report run(const Document& doc, const RunOptions& options) {
    const int scale = options.grid_scale.value_or(1);
    if (scale < 1)
        throw std::invalid_argument("run: grid scale must be >= 1");
    Runner r{doc,
             doc.space.build(),
             geometric_grid(-10, 20, scale),
             options.trials,
             options.seed.value_or(doc.seed),
             {}};
    for (const auto& check : doc.checks) {
        try {
            std::visit([&](const auto& body) { r(check.id, body); }, check.body);
        } catch (const PreconditionViolation& e) {
            Emitter{r.report, check.id}.result("FAIL", "precondition=" + quoted(e.what()));
        } catch (const std::exception& e) {
            Emitter{r.report, check.id}.result("FAIL", "error=" + quoted(e.what()));
        }
    }
    return std::move(r.report);
}

} // namespace m2pn
