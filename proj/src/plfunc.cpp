// SPDX-License-Identifier: MIT
#include "tropdiv/plfunc.hpp"

#include "tropdiv/errors.hpp"

#include <algorithm>

namespace tropdiv {

namespace {

// Piece slope between consecutive sample points; throws when non-integer.
Rational checked_slope(const MetricGraph& g, int e, size_t piece_index,
                       const Rational& off_a, const Rational& val_a,
                       const Rational& off_b, const Rational& val_b) {
    Rational slope = (val_b - val_a) / (off_b - off_a);
    if (!rational_is_integer(slope)) {
        throw validation_error("non-integer slope on edge " + g.graph.edge(e).name +
                               " piece " + std::to_string(piece_index + 1));
    }
    return slope;
}

// Full sample list for one edge: endpoints plus interior breaks.
struct EdgeProfile {
    std::vector<Rational> off;
    std::vector<Rational> val;
};

EdgeProfile edge_profile(const MetricGraph& g, const PLFunction& f, int e) {
    EdgeProfile pr;
    const Edge& ed = g.graph.edge(e);
    pr.off.push_back(Rational(0));
    pr.val.push_back(f.vertex_value[ed.u]);
    for (const PLBreak& b : f.edge_breaks[e]) {
        pr.off.push_back(b.offset);
        pr.val.push_back(b.value);
    }
    pr.off.push_back(g.length[e]);
    pr.val.push_back(f.vertex_value[ed.v]);
    return pr;
}

// Integer slope of the first piece leaving the given endpoint.
Int outgoing_slope(const MetricGraph& g, const PLFunction& f, int e, bool from_u) {
    EdgeProfile pr = edge_profile(g, f, e);
    size_t n = pr.off.size();
    Rational s;
    if (from_u) {
        s = (pr.val[1] - pr.val[0]) / (pr.off[1] - pr.off[0]);
    } else {
        s = (pr.val[n - 2] - pr.val[n - 1]) / (pr.off[n - 1] - pr.off[n - 2]);
    }
    if (!rational_is_integer(s)) throw invariant_violation("stored PL function has a non-integer slope");
    return to_int_checked(Integer(s.get_num()), "slope");
}

} // namespace

PLFunction make_pl(const MetricGraph& g, std::vector<Rational> vertex_values,
                   std::vector<std::vector<PLBreak>> samples) {
    g.validate();
    if (static_cast<int>(vertex_values.size()) != g.graph.vertex_count()) {
        throw validation_error("vertex value list does not match vertex count");
    }
    samples.resize(g.graph.edge_count());

    PLFunction f;
    f.vertex_value = std::move(vertex_values);
    f.edge_breaks.resize(g.graph.edge_count());

    for (int e = 0; e < g.graph.edge_count(); ++e) {
        const Edge& ed = g.graph.edge(e);
        auto& sl = samples[e];
        std::sort(sl.begin(), sl.end(),
                  [](const PLBreak& a, const PLBreak& b) { return a.offset < b.offset; });

        // Assemble the profile, folding endpoint samples into the vertex
        // values and rejecting conflicts.
        std::vector<Rational> off{Rational(0)};
        std::vector<Rational> val{f.vertex_value[ed.u]};
        for (const PLBreak& b : sl) {
            if (b.offset < 0 || b.offset > g.length[e]) {
                throw validation_error("offset out of range on edge '" + ed.name + "'");
            }
            Rational v = b.value;
            if (b.offset == off.back()) {
                if (v != val.back()) {
                    std::string where = off.back() == 0 ? g.graph.vertex_name(ed.u)
                                                        : ed.name + "@" + rational_str(off.back());
                    throw validation_error("discontinuous at point " + where);
                }
                continue;
            }
            off.push_back(b.offset);
            val.push_back(v);
        }
        if (off.back() == g.length[e]) {
            if (val.back() != f.vertex_value[ed.v]) {
                throw validation_error("discontinuous at point " + g.graph.vertex_name(ed.v));
            }
            off.pop_back();
            val.pop_back();
        }
        off.push_back(g.length[e]);
        val.push_back(f.vertex_value[ed.v]);

        // Validate slopes and drop collinear interior points.
        std::vector<PLBreak> keep;
        Rational prev_slope;
        for (size_t i = 0; i + 1 < off.size(); ++i) {
            Rational s = checked_slope(g, e, i, off[i], val[i], off[i + 1], val[i + 1]);
            // collinear samples are normalized away
            if (i > 0 && s != prev_slope) keep.push_back(PLBreak{off[i], val[i]});
            prev_slope = s;
        }
        f.edge_breaks[e] = std::move(keep);
    }
    return f;
}

PLFunction pl_constant(const MetricGraph& g, const Rational& value) {
    PLFunction f;
    f.vertex_value.assign(g.graph.vertex_count(), value);
    f.edge_breaks.resize(g.graph.edge_count());
    return f;
}

Rational pl_evaluate(const MetricGraph& g, const PLFunction& f, const Point& p) {
    validate_point(g, p);
    if (p.kind == Point::Kind::Vertex) return f.vertex_value[p.id];
    EdgeProfile pr = edge_profile(g, f, p.id);
    size_t i = 1;
    while (pr.off[i] < p.offset) ++i;
    if (pr.off[i] == p.offset) return pr.val[i];
    Rational t = (p.offset - pr.off[i - 1]) / (pr.off[i] - pr.off[i - 1]);
    return pr.val[i - 1] + t * (pr.val[i] - pr.val[i - 1]);
}

Int pl_order_at(const MetricGraph& g, const PLFunction& f, const Point& p) {
    validate_point(g, p);
    if (p.kind == Point::Kind::Vertex) {
        Int ord = 0;
        // Self-edges appear twice in the incidence list, once per germ, but
        // both germs read from the same endpoint role. Walk edges directly.
        for (int e = 0; e < g.graph.edge_count(); ++e) {
            const Edge& ed = g.graph.edge(e);
            if (ed.u == p.id) ord += outgoing_slope(g, f, e, true);
            if (ed.v == p.id) ord += outgoing_slope(g, f, e, false);
        }
        return ord;
    }
    EdgeProfile pr = edge_profile(g, f, p.id);
    size_t i = 1;
    while (pr.off[i] < p.offset) ++i;
    if (pr.off[i] != p.offset) return 0;
    Rational left = (pr.val[i] - pr.val[i - 1]) / (pr.off[i] - pr.off[i - 1]);
    Rational right = (pr.val[i + 1] - pr.val[i]) / (pr.off[i + 1] - pr.off[i]);
    Rational ord = right - left;
    return to_int_checked(Integer(ord.get_num()), "order");
}

OrderMap order_map(const MetricGraph& g, const PLFunction& f) {
    OrderMap out;
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        Int ord = pl_order_at(g, f, Point::vertex(v));
        if (ord != 0) out[Point::vertex(v)] = ord;
    }
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        for (const PLBreak& b : f.edge_breaks[e]) {
            Point p = Point::interior(e, b.offset);
            Int ord = pl_order_at(g, f, p);
            if (ord != 0) out[p] = ord;
        }
    }
    return out;
}

Divisor divisor_of(const MetricGraph& g, const PLFunction& f) {
    Divisor out;
    for (const auto& [p, k] : order_map(g, f)) add_chip(out, p, k);
    return out;
}

PLFunction pl_combine(const MetricGraph& g, Int a, const PLFunction& f, Int b, const PLFunction& h) {
    if (static_cast<int>(f.vertex_value.size()) != g.graph.vertex_count() ||
        static_cast<int>(h.vertex_value.size()) != g.graph.vertex_count()) {
        throw validation_error("PL function does not match host");
    }
    std::vector<Rational> values(g.graph.vertex_count());
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        values[v] = to_rational(a) * f.vertex_value[v] + to_rational(b) * h.vertex_value[v];
    }
    std::vector<std::vector<PLBreak>> samples(g.graph.edge_count());
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        std::vector<Rational> offs;
        for (const PLBreak& x : f.edge_breaks[e]) offs.push_back(x.offset);
        for (const PLBreak& x : h.edge_breaks[e]) offs.push_back(x.offset);
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        for (const Rational& o : offs) {
            Point p = Point::interior(e, o);
            Rational v = to_rational(a) * pl_evaluate(g, f, p) + to_rational(b) * pl_evaluate(g, h, p);
            samples[e].push_back(PLBreak{o, v});
        }
    }
    return make_pl(g, std::move(values), std::move(samples));
}

bool pl_equal(const PLFunction& a, const PLFunction& b) {
    if (a.vertex_value != b.vertex_value) return false;
    if (a.edge_breaks.size() != b.edge_breaks.size()) return false;
    for (size_t e = 0; e < a.edge_breaks.size(); ++e) {
        const auto& x = a.edge_breaks[e];
        const auto& y = b.edge_breaks[e];
        if (x.size() != y.size()) return false;
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i].offset != y[i].offset || x[i].value != y[i].value) return false;
        }
    }
    return true;
}

} // namespace tropdiv
