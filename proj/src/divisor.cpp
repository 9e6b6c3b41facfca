// SPDX-License-Identifier: MIT
#include "tropdiv/divisor.hpp"

#include "tropdiv/errors.hpp"

namespace tropdiv {

Int degree(const Divisor& d) {
    Int s = 0;
    for (const auto& [p, k] : d) s += k;
    return s;
}

Int deg_plus(const Divisor& d) {
    Int s = 0;
    for (const auto& [p, k] : d) {
        if (k > 0) s += k;
    }
    return s;
}

bool is_effective(const Divisor& d) {
    for (const auto& [p, k] : d) {
        if (k < 0) return false;
    }
    return true;
}

void add_chip(Divisor& d, const Point& p, Int delta) {
    if (delta == 0) return;
    auto it = d.find(p);
    if (it == d.end()) {
        d.emplace(p, delta);
        return;
    }
    it->second += delta;
    if (it->second == 0) d.erase(it);
}

Int chips_at(const Divisor& d, const Point& p) {
    auto it = d.find(p);
    return it == d.end() ? 0 : it->second;
}

Divisor combine(Int a, const Divisor& d1, Int b, const Divisor& d2) {
    Divisor out;
    for (const auto& [p, k] : d1) add_chip(out, p, a * k);
    for (const auto& [p, k] : d2) add_chip(out, p, b * k);
    return out;
}

bool divisor_leq(const Divisor& a, const Divisor& b) {
    for (const auto& [p, k] : a) {
        if (k > chips_at(b, p)) return false;
    }
    for (const auto& [p, k] : b) {
        if (chips_at(a, p) > k) return false;
    }
    return true;
}

Divisor map_divisor(const Divisor& d, const std::function<Point(const Point&)>& f) {
    Divisor out;
    for (const auto& [p, k] : d) add_chip(out, f(p), k);
    return out;
}

void validate_on_host(const MetricGraph& g, const Divisor& d) {
    for (const auto& [p, k] : d) {
        validate_point(g, p);
        if (k == 0) throw invariant_violation("divisor stores a zero chip value");
    }
}

void validate_on_curve(const TropicalCurve& c, const Divisor& d) {
    for (const auto& [p, k] : d) {
        validate_curve_point(c, p);
        if (k == 0) throw invariant_violation("divisor stores a zero chip value");
    }
}

void validate_vertex_supported(const Graph& g, const Divisor& d) {
    for (const auto& [p, k] : d) {
        (void)k;
        if (p.kind != Point::Kind::Vertex) {
            throw validation_error("divisor is not vertex-supported");
        }
        if (p.id < 0 || p.id >= g.vertex_count()) throw validation_error("unknown vertex index");
    }
}

Divisor canonical_divisor(const MetricGraph& g) {
    Divisor out;
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        add_chip(out, Point::vertex(v), g.graph.degree(v) - 2);
    }
    return out;
}

Divisor canonical_divisor_curve(const TropicalCurve& c) {
    Divisor out;
    for (int v = 0; v < c.metric.graph.vertex_count(); ++v) {
        add_chip(out, Point::vertex(v), c.curve_degree(v) - 2);
    }
    for (int k = 0; k < static_cast<int>(c.infinite_edges.size()); ++k) {
        add_chip(out, Point::unbounded_end(k), -1);
    }
    return out;
}

Divisor retract_divisor(const TropicalCurve& c, const Divisor& d) {
    validate_on_curve(c, d);
    Divisor out;
    for (const auto& [p, k] : d) {
        if (p.kind == Point::Kind::InfInterior || p.kind == Point::Kind::UnboundedEnd) {
            add_chip(out, Point::vertex(c.infinite_edges[p.id].attachment), k);
        } else {
            add_chip(out, p, k);
        }
    }
    return out;
}

namespace {

std::string divisor_str_impl(const Divisor& d, const std::function<std::string(const Point&)>& pstr) {
    if (d.empty()) return "0";
    std::string out;
    for (const auto& [p, k] : d) {
        std::string term;
        if (k == 1) {
            term = "(" + pstr(p) + ")";
        } else if (k == -1) {
            term = "-(" + pstr(p) + ")";
        } else {
            term = std::to_string(k) + "(" + pstr(p) + ")";
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

} // namespace

std::string divisor_str(const MetricGraph& g, const Divisor& d) {
    return divisor_str_impl(d, [&g](const Point& p) { return point_str(g, p); });
}

std::string curve_divisor_str(const TropicalCurve& c, const Divisor& d) {
    return divisor_str_impl(d, [&c](const Point& p) { return curve_point_str(c, p); });
}

} // namespace tropdiv
