// SPDX-License-Identifier: MIT
#include "tropdiv/topology.hpp"

#include "tropdiv/errors.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <set>

namespace tropdiv {

int point_cmp(const Point& a, const Point& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
    if (a.id != b.id) return a.id < b.id ? -1 : 1;
    if (a.kind == Point::Kind::Interior || a.kind == Point::Kind::InfInterior) {
        return mpq_cmp(a.offset.get_mpq_t(), b.offset.get_mpq_t());
    }
    return 0;
}

int Graph::add_vertex(const std::string& name, bool auxiliary) {
    if (vindex_.count(name)) throw validation_error("duplicate id '" + name + "'");
    int idx = vertex_count();
    vindex_[name] = idx;
    vnames_.push_back(name);
    aux_.push_back(auxiliary);
    inc_.emplace_back();
    return idx;
}

int Graph::add_edge(const std::string& name, int u, int v) {
    if (eindex_.count(name)) throw validation_error("duplicate id '" + name + "'");
    if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) {
        throw validation_error("edge '" + name + "' references an unknown vertex");
    }
    int idx = edge_count();
    eindex_[name] = idx;
    edges_.push_back(Edge{name, u, v});
    inc_[u].emplace_back(idx, v);
    inc_[v].emplace_back(idx, u);
    return idx;
}

int Graph::find_vertex(const std::string& name) const {
    auto it = vindex_.find(name);
    return it == vindex_.end() ? -1 : it->second;
}

int Graph::find_edge(const std::string& name) const {
    auto it = eindex_.find(name);
    return it == eindex_.end() ? -1 : it->second;
}

bool Graph::connected() const {
    if (vertex_count() == 0) return false;
    std::vector<bool> seen(vertex_count(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [e, w] : inc_[v]) {
            (void)e;
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == vertex_count();
}

void Graph::require_connected() const {
    if (vertex_count() == 0) throw validation_error("graph has no vertices");
    if (!connected()) throw validation_error("disconnected graph");
}

bool Graph::has_self_edge() const {
    for (const Edge& e : edges_) {
        if (e.u == e.v) return true;
    }
    return false;
}

void MetricGraph::validate() const {
    graph.require_connected();
    if (static_cast<int>(length.size()) != graph.edge_count()) {
        throw invariant_violation("length table does not match edge count");
    }
    for (int e = 0; e < graph.edge_count(); ++e) {
        if (length[e] <= 0) {
            throw validation_error("edge '" + graph.edge(e).name + "' has non-positive length");
        }
    }
}

int TropicalCurve::curve_degree(int v) const {
    int d = metric.graph.degree(v);
    for (const InfiniteEdge& r : infinite_edges) {
        if (r.attachment == v) ++d;
    }
    return d;
}

int TropicalCurve::find_end(const std::string& name) const {
    for (int k = 0; k < static_cast<int>(infinite_edges.size()); ++k) {
        if (infinite_edges[k].end_name == name) return k;
    }
    return -1;
}

int TropicalCurve::find_infinite_edge(const std::string& name) const {
    for (int k = 0; k < static_cast<int>(infinite_edges.size()); ++k) {
        if (infinite_edges[k].name == name) return k;
    }
    return -1;
}

void TropicalCurve::validate() const {
    metric.validate();
    std::set<std::string> names;
    for (int v = 0; v < metric.graph.vertex_count(); ++v) names.insert(metric.graph.vertex_name(v));
    for (const InfiniteEdge& r : infinite_edges) {
        if (r.attachment < 0 || r.attachment >= metric.graph.vertex_count()) {
            throw validation_error("infinite edge '" + r.name + "' has an unknown attachment vertex");
        }
        if (metric.graph.find_edge(r.name) >= 0) {
            throw validation_error("duplicate id '" + r.name + "'");
        }
        // Degree-1 requirement: the unbounded end belongs to exactly one ray
        // and is not a finite vertex.
        if (!names.insert(r.end_name).second) {
            throw validation_error("unbounded end '" + r.end_name + "' has degree > 1");
        }
    }
}

Point make_point(const MetricGraph& g, int e, const Rational& offset) {
    if (e < 0 || e >= g.graph.edge_count()) throw validation_error("unknown edge index");
    if (offset < 0 || offset > g.length[e]) {
        throw validation_error("offset out of range on edge '" + g.graph.edge(e).name + "'");
    }
    if (offset == 0) return Point::vertex(g.graph.edge(e).u);
    if (offset == g.length[e]) return Point::vertex(g.graph.edge(e).v);
    return Point::interior(e, offset);
}

Point make_curve_interior(const TropicalCurve& c, int inf_edge, const Rational& offset) {
    if (inf_edge < 0 || inf_edge >= static_cast<int>(c.infinite_edges.size())) {
        throw validation_error("unknown infinite edge index");
    }
    if (offset < 0) {
        throw validation_error("offset out of range on edge '" + c.infinite_edges[inf_edge].name + "'");
    }
    if (offset == 0) return Point::vertex(c.infinite_edges[inf_edge].attachment);
    return Point::inf_interior(inf_edge, offset);
}

void validate_point(const MetricGraph& g, const Point& p) {
    switch (p.kind) {
    case Point::Kind::Vertex:
        if (p.id < 0 || p.id >= g.graph.vertex_count()) throw validation_error("unknown vertex index");
        return;
    case Point::Kind::Interior:
        if (p.id < 0 || p.id >= g.graph.edge_count()) throw validation_error("unknown edge index");
        if (p.offset <= 0 || p.offset >= g.length[p.id]) {
            throw validation_error("offset out of range on edge '" + g.graph.edge(p.id).name + "'");
        }
        return;
    default:
        throw validation_error("point kind requires a tropical curve host");
    }
}

void validate_curve_point(const TropicalCurve& c, const Point& p) {
    switch (p.kind) {
    case Point::Kind::Vertex:
    case Point::Kind::Interior:
        validate_point(c.metric, p);
        return;
    case Point::Kind::InfInterior:
        if (p.id < 0 || p.id >= static_cast<int>(c.infinite_edges.size())) {
            throw validation_error("unknown infinite edge index");
        }
        if (p.offset <= 0) throw validation_error("offset out of range on infinite edge");
        return;
    case Point::Kind::UnboundedEnd:
        if (p.id < 0 || p.id >= static_cast<int>(c.infinite_edges.size())) {
            throw validation_error("unknown infinite edge index");
        }
        return;
    }
}

std::string point_str(const MetricGraph& g, const Point& p) {
    if (p.kind == Point::Kind::Vertex) return g.graph.vertex_name(p.id);
    if (p.kind == Point::Kind::Interior) {
        return g.graph.edge(p.id).name + "@" + rational_str(p.offset);
    }
    throw invariant_violation("point kind not printable on a metric graph");
}

std::string curve_point_str(const TropicalCurve& c, const Point& p) {
    switch (p.kind) {
    case Point::Kind::InfInterior:
        return c.infinite_edges[p.id].name + "@" + rational_str(p.offset);
    case Point::Kind::UnboundedEnd:
        return c.infinite_edges[p.id].end_name;
    default:
        return point_str(c.metric, p);
    }
}

Int genus(const Graph& g) {
    g.require_connected();
    return static_cast<Int>(g.edge_count()) - g.vertex_count() + 1;
}

Int genus(const MetricGraph& g) { return genus(g.graph); }

Int genus(const TropicalCurve& c) { return genus(c.metric.graph); }

std::vector<int> branch_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) != 2) out.push_back(v);
    }
    if (out.empty() && g.vertex_count() == 1 && g.edge_count() == 1) out.push_back(0);
    return out;
}

std::vector<int> extended_branch_vertices(const Graph& g) {
    std::vector<int> out = branch_vertices(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.auxiliary(v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::string unique_name(const std::set<std::string>& used, std::string base) {
    while (used.count(base)) base += "'";
    return base;
}

PointMap identity_map() {
    auto id = [](const Point& p) { return p; };
    return PointMap{id, id};
}

// Shared cut tables for insert_points maps.
struct CutTables {
    // per source edge: sorted cut offsets, the vertex index at each cut, and
    // the new edge index of each piece (cuts.size()+1 pieces)
    struct EdgeCuts {
        std::vector<Rational> offsets;
        std::vector<int> cut_vertex;
        std::vector<int> piece;
    };
    std::vector<EdgeCuts> per_edge;
    std::vector<Point> new_vertex_source;       // new vertex -> source point
    std::vector<std::pair<int, Rational>> new_edge_source; // new edge -> (source edge, base offset)
};

} // namespace

DerivedMetricGraph insert_points(const MetricGraph& g, std::vector<Point> points) {
    g.validate();
    std::set<Point> cuts;
    for (const Point& p : points) {
        validate_point(g, p);
        if (p.kind == Point::Kind::Interior) cuts.insert(p);
    }
    if (cuts.empty()) {
        return DerivedMetricGraph{g, identity_map()};
    }

    auto tables = std::make_shared<CutTables>();
    tables->per_edge.resize(g.graph.edge_count());
    for (const Point& p : cuts) tables->per_edge[p.id].offsets.push_back(p.offset);

    std::set<std::string> used_v, used_e;
    for (int v = 0; v < g.graph.vertex_count(); ++v) used_v.insert(g.graph.vertex_name(v));
    for (int e = 0; e < g.graph.edge_count(); ++e) used_e.insert(g.graph.edge(e).name);

    MetricGraph out;
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        out.graph.add_vertex(g.graph.vertex_name(v), g.graph.auxiliary(v));
        tables->new_vertex_source.push_back(Point::vertex(v));
    }
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        const Edge& ed = g.graph.edge(e);
        auto& ec = tables->per_edge[e];
        if (ec.offsets.empty()) {
            int idx = out.graph.add_edge(ed.name, ed.u, ed.v);
            out.length.push_back(g.length[e]);
            tables->new_edge_source.emplace_back(e, Rational(0));
            (void)idx;
            continue;
        }
        std::sort(ec.offsets.begin(), ec.offsets.end());
        int prev = ed.u;
        Rational prev_off(0);
        for (size_t k = 0; k <= ec.offsets.size(); ++k) {
            int next;
            Rational next_off;
            if (k < ec.offsets.size()) {
                next_off = ec.offsets[k];
                std::string vn = unique_name(used_v, ed.name + "@" + rational_str(next_off));
                used_v.insert(vn);
                next = out.graph.add_vertex(vn, true);
                ec.cut_vertex.push_back(next);
                tables->new_vertex_source.push_back(Point::interior(e, next_off));
            } else {
                next_off = g.length[e];
                next = ed.v;
            }
            std::string en = unique_name(used_e, ed.name + ":" + std::to_string(k + 1));
            used_e.insert(en);
            int pe = out.graph.add_edge(en, prev, next);
            out.length.push_back(next_off - prev_off);
            ec.piece.push_back(pe);
            tables->new_edge_source.emplace_back(e, prev_off);
            prev = next;
            prev_off = next_off;
        }
    }

    auto forward = [tables](const Point& p) -> Point {
        if (p.kind == Point::Kind::Vertex) return p;
        if (p.kind != Point::Kind::Interior) throw invariant_violation("insert_points map: bad point kind");
        const auto& ec = tables->per_edge.at(p.id);
        if (ec.offsets.empty()) {
            // the edge kept its position but may have a new index
            return Point::interior(ec.piece.empty() ? p.id : ec.piece[0], p.offset);
        }
        size_t j = 0;
        while (j < ec.offsets.size() && ec.offsets[j] < p.offset) ++j;
        if (j < ec.offsets.size() && ec.offsets[j] == p.offset) return Point::vertex(ec.cut_vertex[j]);
        Rational base = (j == 0) ? Rational(0) : ec.offsets[j - 1];
        return Point::interior(ec.piece[j], p.offset - base);
    };
    auto backward = [tables](const Point& p) -> Point {
        if (p.kind == Point::Kind::Vertex) return tables->new_vertex_source.at(p.id);
        if (p.kind != Point::Kind::Interior) throw invariant_violation("insert_points map: bad point kind");
        const auto& src = tables->new_edge_source.at(p.id);
        return Point::interior(src.first, src.second + p.offset);
    };

    // Uncut edges still need their new index in the forward map.
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        auto& ec = tables->per_edge[e];
        if (ec.offsets.empty()) {
            int idx = out.graph.find_edge(g.graph.edge(e).name);
            ec.piece.assign(1, idx);
        }
    }

    out.validate();
    return DerivedMetricGraph{std::move(out), PointMap{forward, backward}};
}

DerivedMetricGraph insert_point(const MetricGraph& g, const Point& p) {
    validate_point(g, p);
    if (p.kind == Point::Kind::Vertex) return DerivedMetricGraph{g, identity_map()};
    return insert_points(g, {p});
}

DerivedMetricGraph scale_lengths(const MetricGraph& g, const Rational& alpha) {
    g.validate();
    if (alpha <= 0) throw validation_error("scale factor must be positive");
    MetricGraph out;
    out.graph = g.graph;
    out.length.reserve(g.length.size());
    for (const Rational& l : g.length) out.length.push_back(l * alpha);
    Rational a = alpha;
    auto forward = [a](const Point& p) -> Point {
        if (p.kind == Point::Kind::Interior) return Point::interior(p.id, p.offset * a);
        return p;
    };
    auto backward = [a](const Point& p) -> Point {
        if (p.kind == Point::Kind::Interior) return Point::interior(p.id, p.offset / a);
        return p;
    };
    return DerivedMetricGraph{std::move(out), PointMap{forward, backward}};
}

int Subdivision::forward_vertex(const Point& p) const {
    auto it = index.find(p);
    if (it == index.end()) throw invariant_violation("point not on the subdivision grid");
    return it->second;
}

MetricGraph Subdivision::unit_host() const {
    MetricGraph out;
    out.graph = graph;
    out.length.assign(graph.edge_count(), Rational(1));
    return out;
}

PointMap Subdivision::point_map() const {
    // Copies of the lookup tables keep the maps valid independently of the
    // Subdivision object's lifetime.
    auto idx = std::make_shared<std::map<Point, int>>(index);
    auto vp = std::make_shared<std::vector<Point>>(vertex_point);
    auto pe = std::make_shared<std::vector<int>>(piece_edge);
    auto pp = std::make_shared<std::vector<Int>>(piece_pos);
    Integer qq = q;
    auto forward = [idx](const Point& p) -> Point {
        auto it = idx->find(p);
        if (it == idx->end()) throw invariant_violation("point not on the subdivision grid");
        return Point::vertex(it->second);
    };
    auto backward = [vp, pe, pp, qq](const Point& p) -> Point {
        if (p.kind == Point::Kind::Vertex) return vp->at(p.id);
        if (p.kind != Point::Kind::Interior) throw invariant_violation("subdivision map: bad point kind");
        Rational off = (to_rational(pp->at(p.id) - 1) + p.offset) / Rational(qq);
        return Point::interior(pe->at(p.id), off);
    };
    return PointMap{forward, backward};
}

Subdivision unit_subdivision(const MetricGraph& g, const std::vector<Point>& marked) {
    g.validate();
    Integer q = 1;
    for (const Rational& l : g.length) {
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), l.get_den().get_mpz_t());
    }
    for (const Point& p : marked) {
        validate_point(g, p);
        if (p.kind == Point::Kind::Interior) {
            mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), p.offset.get_den().get_mpz_t());
        }
    }

    Integer total_units = 0;
    for (const Rational& l : g.length) total_units += Integer(l * q);
    if (total_units > 4000000) {
        throw validation_error("unit subdivision too large (" + total_units.get_str() + " unit edges)");
    }

    Subdivision sub;
    sub.q = q;
    std::set<std::string> used_v, used_e;
    for (int v = 0; v < g.graph.vertex_count(); ++v) used_v.insert(g.graph.vertex_name(v));
    for (int e = 0; e < g.graph.edge_count(); ++e) used_e.insert(g.graph.edge(e).name);

    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        sub.graph.add_vertex(g.graph.vertex_name(v), g.graph.auxiliary(v));
        sub.vertex_point.push_back(Point::vertex(v));
        sub.index[Point::vertex(v)] = v;
    }
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        const Edge& ed = g.graph.edge(e);
        Int L = to_int_checked(Integer(g.length[e] * q), "subdivision unit count");
        int prev = ed.u;
        for (Int k = 1; k <= L; ++k) {
            int next;
            if (k < L) {
                Rational off = Rational(to_integer(k)) / Rational(q);
                std::string vn = unique_name(used_v, ed.name + "@" + rational_str(off));
                used_v.insert(vn);
                next = sub.graph.add_vertex(vn, true);
                Point src = Point::interior(e, off);
                sub.vertex_point.push_back(src);
                sub.index[src] = next;
            } else {
                next = ed.v;
            }
            std::string en = unique_name(used_e, ed.name + "#" + std::to_string(k));
            used_e.insert(en);
            sub.graph.add_edge(en, prev, next);
            sub.piece_edge.push_back(e);
            sub.piece_pos.push_back(k);
            prev = next;
        }
    }
    return sub;
}

Graph subdivide_edges(const Graph& g, int k) {
    g.require_connected();
    if (k < 0) throw validation_error("subdivision count must be nonnegative");
    Graph out;
    std::set<std::string> used_v, used_e;
    for (int v = 0; v < g.vertex_count(); ++v) used_v.insert(g.vertex_name(v));
    for (int e = 0; e < g.edge_count(); ++e) used_e.insert(g.edge(e).name);
    for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.vertex_name(v), g.auxiliary(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        int prev = ed.u;
        for (int i = 1; i <= k + 1; ++i) {
            int next;
            if (i <= k) {
                std::string vn = unique_name(used_v, ed.name + "@" + std::to_string(i));
                used_v.insert(vn);
                next = out.add_vertex(vn, true);
            } else {
                next = ed.v;
            }
            std::string en = k == 0 ? ed.name : unique_name(used_e, ed.name + "#" + std::to_string(i));
            if (k != 0) used_e.insert(en);
            out.add_edge(en, prev, next);
            prev = next;
        }
    }
    return out;
}

} // namespace tropdiv
