// SPDX-License-Identifier: MIT
#include "tropdiv/reduction.hpp"

#include "tropdiv/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace tropdiv {
namespace {

Int ceil_div_pos(Int a, Int b) { return (a + b - 1) / b; } // a >= 0, b >= 1

std::vector<Int> chip_vector(const Graph& g, const Divisor& d) {
    std::vector<Int> chips(g.vertex_count(), 0);
    for (const auto& [p, c] : d) chips[static_cast<std::size_t>(p.id)] = c;
    return chips;
}

std::vector<int> bfs_distances(const Graph& g, int v0) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    dist[v0] = 0;
    q.push(v0);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (const auto& [e, y] : g.incident(x)) {
            (void)e;
            if (dist[y] >= 0) continue;
            dist[y] = dist[x] + 1;
            q.push(y);
        }
    }
    return dist;
}

// Dhar burn: a vertex catches fire when the burning edges at it outnumber its
// chips. Returns the burnt set; everything burnt means reduced.
std::vector<char> dhar_burn(const Graph& g, const std::vector<Int>& chips, int v0) {
    std::vector<char> burnt(g.vertex_count(), 0);
    burnt[v0] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (burnt[v]) continue;
            Int hot = 0;
            for (const auto& [e, w] : g.incident(v)) {
                (void)e;
                if (burnt[w]) ++hot;
            }
            if (hot > chips[v]) {
                burnt[v] = 1;
                changed = true;
            }
        }
    }
    return burnt;
}

// Fires every vertex of the set k times: chips cross each cut edge outward.
void fire_set(const Graph& g, const std::vector<char>& in_set, Int k, std::vector<Int>& chips,
              std::vector<Int>& script) {
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (in_set[u] && !in_set[v]) {
            chips[u] -= k;
            chips[v] += k;
        } else if (in_set[v] && !in_set[u]) {
            chips[v] -= k;
            chips[u] += k;
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (in_set[v]) script[v] += k;
}

bool nonnegative_off_base(const Graph& g, const std::vector<Int>& chips, int v0) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != v0 && chips[v] < 0) return false;
    return true;
}

} // namespace

Divisor principal_divisor(const Graph& g, const std::vector<Int>& script) {
    if (static_cast<int>(script.size()) != g.vertex_count())
        throw validation_error("firing script size does not match the vertex count");
    Divisor d;
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (u == v) continue;
        add_chip(d, Point::vertex(u), script[v] - script[u]);
        add_chip(d, Point::vertex(v), script[u] - script[v]);
    }
    return d;
}

GraphReduction reduce_graph(const Graph& g, const Divisor& d, int v0) {
    g.require_connected();
    validate_vertex_supported(g, d);
    if (v0 < 0 || v0 >= g.vertex_count()) throw validation_error("unknown vertex");

    std::vector<Int> chips = chip_vector(g, d);
    std::vector<Int> script(chips.size(), 0);
    std::vector<int> dist = bfs_distances(g, v0);
    int dmax = *std::max_element(dist.begin(), dist.end());

    // Phase 1: make every layer nonnegative, farthest first. Firing the ball
    // of radius t-1 feeds each layer-t vertex across at least one cut edge
    // and only borrows from vertices the later (smaller t) steps fix.
    for (int t = dmax; t >= 1; --t) {
        Int k = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (dist[v] != t || chips[v] >= 0) continue;
            Int cross = 0;
            for (const auto& [e, w] : g.incident(v)) {
                (void)e;
                if (dist[w] < t) ++cross;
            }
            if (cross <= 0) throw invariant_violation("layer vertex without an inward edge");
            k = std::max(k, ceil_div_pos(-chips[v], cross));
        }
        if (k == 0) continue;
        std::vector<char> in_set(chips.size(), 0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dist[v] < t) in_set[v] = 1;
        fire_set(g, in_set, k, chips, script);
    }
    if (!nonnegative_off_base(g, chips, v0))
        throw invariant_violation("layered firings left a negative vertex");

    // Phase 2: burn from the base; an unburnt remainder is a set every one of
    // whose boundary vertices can pay for one firing.
    const long long max_rounds = 2'000'000;
    for (long long round = 0;; ++round) {
        if (round > max_rounds) throw invariant_violation("reduction did not converge");
        std::vector<char> burnt = dhar_burn(g, chips, v0);
        bool all = true;
        for (char b : burnt)
            if (!b) {
                all = false;
                break;
            }
        if (all) break;
        std::vector<char> unburnt(burnt.size());
        for (std::size_t i = 0; i < burnt.size(); ++i) unburnt[i] = burnt[i] ? 0 : 1;
        fire_set(g, unburnt, 1, chips, script);
    }

    GraphReduction out;
    Int base_shift = script[v0];
    for (auto& s : script) s -= base_shift;
    for (int v = 0; v < g.vertex_count(); ++v) add_chip(out.reduced, Point::vertex(v), chips[v]);
    out.certificate = std::move(script);
    return out;
}

bool is_reduced_graph(const Graph& g, const Divisor& d, int v0, bool exhaustive) {
    g.require_connected();
    validate_vertex_supported(g, d);
    if (v0 < 0 || v0 >= g.vertex_count()) throw validation_error("unknown vertex");
    std::vector<Int> chips = chip_vector(g, d);

    bool burn_verdict = false;
    if (nonnegative_off_base(g, chips, v0)) {
        std::vector<char> burnt = dhar_burn(g, chips, v0);
        burn_verdict = std::find(burnt.begin(), burnt.end(), char(0)) == burnt.end();
    }

    if (exhaustive && g.vertex_count() <= 12) {
        bool subset_verdict = nonnegative_off_base(g, chips, v0);
        if (subset_verdict) {
            int n = g.vertex_count();
            std::vector<int> others;
            for (int v = 0; v < n; ++v)
                if (v != v0) others.push_back(v);
            for (unsigned mask = 1; mask < (1u << others.size()); ++mask) {
                std::vector<char> in_set(n, 0);
                for (std::size_t i = 0; i < others.size(); ++i)
                    if (mask & (1u << i)) in_set[others[i]] = 1;
                bool has_nonsaturated = false;
                for (std::size_t i = 0; i < others.size() && !has_nonsaturated; ++i) {
                    if (!(mask & (1u << i))) continue;
                    int v = others[i];
                    Int leaving = 0;
                    for (const auto& [e, w] : g.incident(v)) {
                        (void)e;
                        if (!in_set[w]) ++leaving;
                    }
                    if (leaving > chips[v]) has_nonsaturated = true;
                }
                if (!has_nonsaturated) {
                    subset_verdict = false;
                    break;
                }
            }
        }
        if (subset_verdict != burn_verdict)
            throw invariant_violation("burn test disagrees with the exhaustive subset test");
    }
    return burn_verdict;
}

SaturationReport saturation(const Graph& g, const Divisor& d, const std::vector<bool>& in_set,
                            int v) {
    validate_vertex_supported(g, d);
    if (v < 0 || v >= g.vertex_count()) throw validation_error("unknown vertex");
    if (static_cast<int>(in_set.size()) != g.vertex_count())
        throw validation_error("set size does not match the vertex count");
    if (!in_set[static_cast<std::size_t>(v)])
        throw validation_error("saturation point must lie in the set");
    SaturationReport rep;
    for (const auto& [e, w] : g.incident(v)) {
        (void)e;
        if (!in_set[static_cast<std::size_t>(w)]) ++rep.edges_leaving;
    }
    rep.chips = chips_at(d, Point::vertex(v));
    rep.saturated = rep.edges_leaving <= rep.chips;
    return rep;
}

namespace {

struct SubdividedProblem {
    Subdivision sub;
    MetricGraph host;
    PointMap map;
    Divisor chips;
    int base_vertex = -1;
};

SubdividedProblem subdivide_for(const MetricGraph& g, const Divisor& d, const Point& base,
                                const std::vector<Point>& extra_marks) {
    validate_on_host(g, d);
    validate_point(g, base);
    std::vector<Point> marks = extra_marks;
    marks.push_back(base);
    for (const auto& [p, c] : d) {
        (void)c;
        marks.push_back(p);
    }
    SubdividedProblem sp;
    sp.sub = unit_subdivision(g, marks);
    sp.host = sp.sub.unit_host();
    sp.map = sp.sub.point_map();
    sp.chips = map_divisor(d, sp.map.forward);
    Point fb = sp.map.forward(base);
    if (fb.kind != Point::Kind::Vertex)
        throw invariant_violation("base point did not land on a subdivision vertex");
    sp.base_vertex = fb.id;
    return sp;
}

// Scales script values by 1/q so that the pullback through the homothety
// keeps integer slopes and reproduces reduced - input as its divisor.
PLFunction transport_script(const MetricGraph& g, const SubdividedProblem& sp,
                            const std::vector<Int>& script) {
    std::vector<Rational> vv(static_cast<std::size_t>(g.graph.vertex_count()), Rational(0));
    std::vector<std::vector<PLBreak>> samples(static_cast<std::size_t>(g.graph.edge_count()));
    Rational qr(sp.sub.q);
    for (int w = 0; w < sp.host.graph.vertex_count(); ++w) {
        const Point& src = sp.sub.vertex_point[static_cast<std::size_t>(w)];
        Rational val = to_rational(script[static_cast<std::size_t>(w)]) / qr;
        if (src.kind == Point::Kind::Vertex)
            vv[static_cast<std::size_t>(src.id)] = val;
        else
            samples[static_cast<std::size_t>(src.id)].push_back({src.offset, val});
    }
    return make_pl(g, std::move(vv), std::move(samples));
}

} // namespace

MetricReduction reduce_metric(const MetricGraph& g, const Divisor& d, const Point& base) {
    SubdividedProblem sp = subdivide_for(g, d, base, {});
    GraphReduction gr = reduce_graph(sp.host.graph, sp.chips, sp.base_vertex);
    MetricReduction out;
    out.reduced = map_divisor(gr.reduced, sp.map.backward);
    out.certificate = transport_script(g, sp, gr.certificate);
    return out;
}

bool is_reduced_metric(const MetricGraph& g, const Divisor& d, const Point& base) {
    SubdividedProblem sp = subdivide_for(g, d, base, {});
    return is_reduced_graph(sp.host.graph, sp.chips, sp.base_vertex);
}

int canonical_base_vertex(const Graph& g) {
    if (g.vertex_count() == 0) throw validation_error("empty graph");
    int best = 0;
    for (int v = 1; v < g.vertex_count(); ++v)
        if (g.vertex_name(v) < g.vertex_name(best)) best = v;
    return best;
}

EquivalenceResult equivalent(const MetricGraph& g, const Divisor& d1, const Divisor& d2) {
    validate_on_host(g, d1);
    validate_on_host(g, d2);
    if (degree(d1) != degree(d2)) return {false, std::nullopt};
    Point base = Point::vertex(canonical_base_vertex(g.graph));
    MetricReduction r1 = reduce_metric(g, d1, base);
    MetricReduction r2 = reduce_metric(g, d2, base);
    if (!(r1.reduced == r2.reduced)) return {false, std::nullopt};
    // following the first certificate forward and the second backward
    // carries d1 to d2
    return {true, pl_combine(g, 1, r1.certificate, -1, r2.certificate)};
}

int epsilon(const MetricGraph& g, const Divisor& d) {
    Point base = Point::vertex(canonical_base_vertex(g.graph));
    MetricReduction r = reduce_metric(g, d, base);
    return chips_at(r.reduced, base) >= 0 ? 0 : 1;
}

NonspecialWitness nonspecial_witness(const MetricGraph& g, const Divisor& d) {
    Point base = Point::vertex(canonical_base_vertex(g.graph));
    std::vector<Point> req = required_support(g);
    SubdividedProblem sp = subdivide_for(g, d, base, req);
    GraphReduction gr = reduce_graph(sp.host.graph, sp.chips, sp.base_vertex);

    NonspecialWitness out;
    out.reduced = map_divisor(gr.reduced, sp.map.backward);
    if (chips_at(gr.reduced, Point::vertex(sp.base_vertex)) >= 0) {
        out.rank_nonnegative = true;
        return out;
    }

    const Graph& h = sp.host.graph;
    std::vector<Int> chips = chip_vector(h, gr.reduced);

    std::set<int> qset;
    for (const Point& p : req) qset.insert(sp.map.forward(p).id);
    for (const auto& [p, c] : gr.reduced) {
        (void)c;
        qset.insert(p.id);
    }
    qset.insert(sp.base_vertex);

    // Order the points: keep appending an unordered point with more edges
    // into the region already reachable from the base than it has chips.
    // Reducedness guarantees such a point exists at every step.
    std::vector<std::pair<Point, int>> rest;
    for (int w : qset)
        if (w != sp.base_vertex) rest.push_back({sp.map.backward(Point::vertex(w)), w});
    std::sort(rest.begin(), rest.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<char> blocked(static_cast<std::size_t>(h.vertex_count()), 0);
    for (const auto& [bp, w] : rest) {
        (void)bp;
        blocked[static_cast<std::size_t>(w)] = 1;
    }

    Permutation perm;
    perm.order.push_back(base);
    while (!rest.empty()) {
        std::vector<char> reach(static_cast<std::size_t>(h.vertex_count()), 0);
        std::vector<int> stack{sp.base_vertex};
        reach[static_cast<std::size_t>(sp.base_vertex)] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& [e, y] : h.incident(x)) {
                (void)e;
                if (reach[static_cast<std::size_t>(y)] || blocked[static_cast<std::size_t>(y)])
                    continue;
                reach[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
        std::size_t chosen = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            int w = rest[i].second;
            Int cnt = 0;
            for (const auto& [e, y] : h.incident(w)) {
                (void)e;
                if (reach[static_cast<std::size_t>(y)]) ++cnt;
            }
            if (cnt > chips[static_cast<std::size_t>(w)]) {
                chosen = i;
                break;
            }
        }
        if (chosen == rest.size())
            throw invariant_violation("no non-saturated boundary point found");
        blocked[static_cast<std::size_t>(rest[chosen].second)] = 0;
        perm.order.push_back(rest[chosen].first);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(chosen));
    }
    out.witness = perm;
    return out;
}

} // namespace tropdiv
