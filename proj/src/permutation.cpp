// SPDX-License-Identifier: MIT
#include "tropdiv/permutation.hpp"

#include "tropdiv/errors.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace tropdiv {
namespace {

constexpr const char* kMissingSupport = "support missing a branch/transversal point";

struct RawSegment {
    Point a;
    Point b;
    int primary_edge = -1;
    Point sample;
    std::vector<Point> interior_vertices; // pass-through vertices of the source host, sorted
    int idx_a = -1;
    int idx_b = -1; // indices into the sorted support
};

struct RawCut {
    std::vector<Point> support; // sorted, deduplicated
    std::vector<RawSegment> segments;
};

// Edge germ: role 0 sits at u and traverses toward v, role 1 the reverse.
struct Germ {
    int edge = -1;
    int role = -1;
};

// Cuts the host at the support points. Walks start at support germs and pass
// through non-support degree-2 vertices; hitting a non-support vertex of any
// other degree means the support misses a branching point.
RawCut cut_raw(const MetricGraph& g, std::vector<Point> support, bool allow_loops) {
    for (const Point& p : support) validate_point(g, p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    RawCut out;
    out.support = support;
    if (support.empty()) {
        if (g.graph.edge_count() > 0) throw validation_error(kMissingSupport);
        return out;
    }

    std::vector<Point> interiors;
    for (const Point& p : support)
        if (p.kind == Point::Kind::Interior) interiors.push_back(p);
    DerivedMetricGraph der = insert_points(g, interiors);
    const Graph& h = der.host.graph;

    std::vector<char> supp_vertex(h.vertex_count(), 0);
    std::vector<int> supp_index(h.vertex_count(), -1);
    for (std::size_t i = 0; i < support.size(); ++i) {
        Point q = der.map.forward(support[i]);
        if (q.kind != Point::Kind::Vertex)
            throw invariant_violation("support point did not land on a vertex");
        supp_vertex[q.id] = 1;
        supp_index[q.id] = static_cast<int>(i);
    }

    std::vector<std::vector<Germ>> germs(h.vertex_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        germs[h.edge(e).u].push_back({e, 0});
        germs[h.edge(e).v].push_back({e, 1});
    }

    // Midpoints of pieces always map back to edge interiors of the source.
    auto piece_mid = [&](int piece) {
        Point mid = der.map.backward(Point::interior(piece, der.host.edge_length(piece) / 2));
        if (mid.kind != Point::Kind::Interior)
            throw invariant_violation("piece midpoint did not map to an edge interior");
        return mid;
    };

    std::vector<std::array<char, 2>> visited(h.edge_count(), {0, 0});
    for (std::size_t si = 0; si < support.size(); ++si) {
        int s = der.map.forward(support[si]).id;
        for (const Germ& g0 : germs[s]) {
            if (visited[g0.edge][g0.role]) continue;
            RawSegment seg;
            seg.a = support[si];
            seg.idx_a = static_cast<int>(si);
            std::vector<int> pieces;
            int cur_e = g0.edge;
            int cur_role = g0.role;
            for (;;) {
                visited[cur_e][0] = visited[cur_e][1] = 1;
                pieces.push_back(cur_e);
                int t = cur_role == 0 ? h.edge(cur_e).v : h.edge(cur_e).u;
                if (supp_vertex[t]) {
                    seg.b = support[static_cast<std::size_t>(supp_index[t])];
                    seg.idx_b = supp_index[t];
                    break;
                }
                if (h.degree(t) != 2) throw validation_error(kMissingSupport);
                seg.interior_vertices.push_back(der.map.backward(Point::vertex(t)));
                const auto& gt = germs[t];
                Germ arrive{cur_e, 1 - cur_role};
                const Germ& nx =
                    (gt[0].edge == arrive.edge && gt[0].role == arrive.role) ? gt[1] : gt[0];
                cur_e = nx.edge;
                cur_role = nx.role;
            }
            Point m_first = piece_mid(pieces.front());
            Point m_last = piece_mid(pieces.back());
            if (seg.b < seg.a) {
                std::swap(seg.a, seg.b);
                std::swap(seg.idx_a, seg.idx_b);
                seg.primary_edge = m_last.id;
                seg.sample = m_last;
            } else if (seg.a == seg.b) {
                if (!allow_loops) throw validation_error(kMissingSupport);
                bool fwd = m_first.id <= m_last.id;
                seg.primary_edge = fwd ? m_first.id : m_last.id;
                seg.sample = fwd ? m_first : m_last;
            } else {
                seg.primary_edge = m_first.id;
                seg.sample = m_first;
            }
            std::sort(seg.interior_vertices.begin(), seg.interior_vertices.end());
            seg.interior_vertices.erase(
                std::unique(seg.interior_vertices.begin(), seg.interior_vertices.end()),
                seg.interior_vertices.end());
            out.segments.push_back(std::move(seg));
        }
    }
    for (int e = 0; e < h.edge_count(); ++e)
        if (!visited[e][0]) throw invariant_violation("uncut pieces after segment walk");

    std::sort(out.segments.begin(), out.segments.end(),
              [](const RawSegment& x, const RawSegment& y) {
                  if (x.a != y.a) return x.a < y.a;
                  if (x.b != y.b) return x.b < y.b;
                  if (x.primary_edge != y.primary_edge) return x.primary_edge < y.primary_edge;
                  return x.sample < y.sample;
              });
    return out;
}

SegmentStructure assemble(const RawCut& rc, std::vector<PSegment>* loop_segments) {
    SegmentStructure st;
    st.support = rc.support;
    st.segment_degree.assign(rc.support.size(), 0);
    for (const RawSegment& seg : rc.segments) {
        PSegment ps{seg.a, seg.b, seg.primary_edge, seg.sample};
        if (seg.a == seg.b) {
            if (loop_segments) loop_segments->push_back(ps);
            continue;
        }
        st.segment_degree[static_cast<std::size_t>(seg.idx_a)] += 1;
        st.segment_degree[static_cast<std::size_t>(seg.idx_b)] += 1;
        st.segments.push_back(ps);
    }
    return st;
}

} // namespace

SegmentStructure cut_segments_lenient(const MetricGraph& g, const std::vector<Point>& support,
                                      std::vector<PSegment>* loop_segments) {
    return assemble(cut_raw(g, support, true), loop_segments);
}

SegmentStructure cut_segments(const MetricGraph& g, const std::vector<Point>& support) {
    return assemble(cut_raw(g, support, false), nullptr);
}

void validate_permutation(const MetricGraph& g, const Permutation& p) {
    for (const Point& q : p.order) validate_point(g, q);
    std::vector<Point> sorted = p.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1] == sorted[i]) throw validation_error("duplicate point in permutation");
    for (int v : extended_branch_vertices(g.graph))
        if (!std::binary_search(sorted.begin(), sorted.end(), Point::vertex(v)))
            throw validation_error(kMissingSupport);
    cut_raw(g, p.order, false);
}

Divisor nu_divisor(const MetricGraph& g, const Permutation& p) {
    validate_permutation(g, p);
    SegmentStructure st = cut_segments(g, p.order);
    std::map<Point, std::size_t> pos;
    for (std::size_t i = 0; i < p.order.size(); ++i) pos[p.order[i]] = i;
    std::map<Point, Int> backward_count;
    for (const Point& q : st.support) backward_count[q] = 0;
    for (const PSegment& s : st.segments) {
        if (pos[s.end_a] < pos[s.end_b])
            backward_count[s.end_b] += 1;
        else
            backward_count[s.end_a] += 1;
    }
    Divisor res;
    for (const auto& [q, c] : backward_count) add_chip(res, q, c - 1);
    return res;
}

Permutation reverse_perm(const Permutation& p) {
    Permutation r = p;
    std::reverse(r.order.begin(), r.order.end());
    return r;
}

std::vector<Point> required_support(const MetricGraph& g, const std::vector<Point>& extra) {
    std::set<Point> s;
    for (int v : extended_branch_vertices(g.graph)) s.insert(Point::vertex(v));
    for (const Point& p : extra) {
        validate_point(g, p);
        s.insert(p);
    }
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        if (g.graph.edge(e).u != g.graph.edge(e).v) continue;
        bool covered = false;
        for (const Point& p : s)
            if (p.kind == Point::Kind::Interior && p.id == e) {
                covered = true;
                break;
            }
        if (!covered) s.insert(Point::interior(e, g.edge_length(e) / 2));
    }
    if (s.empty()) {
        // branchless circle: seed with the smallest-named vertex
        int best = 0;
        for (int v = 1; v < g.graph.vertex_count(); ++v)
            if (g.graph.vertex_name(v) < g.graph.vertex_name(best)) best = v;
        s.insert(Point::vertex(best));
    }
    for (int guard = 0; guard <= g.graph.vertex_count() + 1; ++guard) {
        RawCut rc = cut_raw(g, std::vector<Point>(s.begin(), s.end()), true);
        const RawSegment* loop = nullptr;
        for (const RawSegment& seg : rc.segments)
            if (seg.a == seg.b) {
                loop = &seg;
                break;
            }
        if (!loop) return {s.begin(), s.end()};
        if (loop->interior_vertices.empty())
            throw invariant_violation("loop segment without an interior vertex");
        s.insert(loop->interior_vertices.front());
    }
    throw invariant_violation("loop transversal completion did not terminate");
}

} // namespace tropdiv
