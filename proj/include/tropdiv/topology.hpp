// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tropdiv {

// A point of a metric graph or tropical curve. Vertex points carry a vertex
// index; interior points carry an edge index and the distance from the edge's
// declared first endpoint (0 < offset < length). Infinite-edge interiors and
// unbounded ends only occur on tropical curves and are indexed by the ray.
// Points are host-relative: indices refer to one specific host object.
struct Point {
    enum class Kind { Vertex = 0, Interior = 1, InfInterior = 2, UnboundedEnd = 3 };

    Kind kind = Kind::Vertex;
    int id = 0;
    Rational offset{0};

    static Point vertex(int v) { return Point{Kind::Vertex, v, Rational(0)}; }
    static Point interior(int e, Rational off) { return Point{Kind::Interior, e, std::move(off)}; }
    static Point inf_interior(int k, Rational off) { return Point{Kind::InfInterior, k, std::move(off)}; }
    static Point unbounded_end(int k) { return Point{Kind::UnboundedEnd, k, Rational(0)}; }
};

// Total order: vertices first by index, then finite edge interiors by
// (edge, offset), then ray interiors, then unbounded ends.
int point_cmp(const Point& a, const Point& b);
inline bool operator<(const Point& a, const Point& b) { return point_cmp(a, b) < 0; }
inline bool operator==(const Point& a, const Point& b) { return point_cmp(a, b) == 0; }
inline bool operator!=(const Point& a, const Point& b) { return point_cmp(a, b) != 0; }

struct Edge {
    std::string name;
    int u = -1;
    int v = -1;
};

// Connected multigraph with named vertices and edges. Self-edges are allowed
// and count twice toward degree. Vertices flagged auxiliary are degree-2
// points promoted to vertices by a transformation; they belong to the
// extended branch set.
class Graph {
public:
    int add_vertex(const std::string& name, bool auxiliary = false);
    int add_edge(const std::string& name, int u, int v);

    int vertex_count() const { return static_cast<int>(vnames_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_name(int v) const { return vnames_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    bool auxiliary(int v) const { return aux_.at(v); }
    int find_vertex(const std::string& name) const;
    int find_edge(const std::string& name) const;

    // (edge index, other endpoint); self-edges appear twice.
    const std::vector<std::pair<int, int>>& incident(int v) const { return inc_.at(v); }
    int degree(int v) const { return static_cast<int>(inc_.at(v).size()); }

    bool connected() const;
    void require_connected() const;
    bool has_self_edge() const;

private:
    std::vector<std::string> vnames_;
    std::vector<bool> aux_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> inc_;
    std::map<std::string, int> vindex_;
    std::map<std::string, int> eindex_;
};

// Finite metric graph: every edge has a positive rational length.
struct MetricGraph {
    Graph graph;
    std::vector<Rational> length;

    const Rational& edge_length(int e) const { return length.at(e); }
    void validate() const;
};

// An infinite ray of a tropical curve: attached to a finite vertex, with a
// named unbounded end of degree one.
struct InfiniteEdge {
    std::string name;
    int attachment = -1;
    std::string end_name;
};

// Tropical curve: a finite metric graph plus infinite rays. Divisors may sit
// on ray interiors and unbounded ends; most operations retract them first.
struct TropicalCurve {
    MetricGraph metric;
    std::vector<InfiniteEdge> infinite_edges;

    bool is_metric() const { return infinite_edges.empty(); }
    // Finite degree plus attached rays.
    int curve_degree(int v) const;
    int find_end(const std::string& name) const;
    int find_infinite_edge(const std::string& name) const;
    void validate() const;
};

// Canonicalizes an interior point: offset 0 or length(e) becomes the
// corresponding vertex point. Throws validation_error when the offset is
// outside [0, length]. The curve overload additionally accepts ray offsets
// (any positive rational).
Point make_point(const MetricGraph& g, int e, const Rational& offset);
Point make_curve_interior(const TropicalCurve& c, int inf_edge, const Rational& offset);

void validate_point(const MetricGraph& g, const Point& p);
void validate_curve_point(const TropicalCurve& c, const Point& p);

std::string point_str(const MetricGraph& g, const Point& p);
std::string curve_point_str(const TropicalCurve& c, const Point& p);

// |E| - |V| + 1 on the finite part; infinite rays contribute one edge and one
// vertex each, so the same formula applies to curves unchanged.
Int genus(const Graph& g);
Int genus(const MetricGraph& g);
Int genus(const TropicalCurve& c);

// Vertices of degree != 2; a single-loop graph contributes its unique vertex.
std::vector<int> branch_vertices(const Graph& g);
// branch_vertices plus auxiliary vertices.
std::vector<int> extended_branch_vertices(const Graph& g);

// A transformation result: the derived host plus a point bijection.
struct PointMap {
    std::function<Point(const Point&)> forward;
    std::function<Point(const Point&)> backward;
};

struct DerivedMetricGraph {
    MetricGraph host;
    PointMap map;
};

// Promotes an interior point to an auxiliary degree-2 vertex. Vertex points
// yield the identity transformation.
DerivedMetricGraph insert_point(const MetricGraph& g, const Point& p);
// Batch version; duplicate and vertex points are ignored.
DerivedMetricGraph insert_points(const MetricGraph& g, std::vector<Point> points);
// Multiplies every length by alpha > 0 (homothety).
DerivedMetricGraph scale_lengths(const MetricGraph& g, const Rational& alpha);

// Unit subdivision: scale by q = lcm of length and marked-offset denominators,
// then split each edge of integer length L into L unit edges. Every vertex
// and every marked point lands on a vertex of the output graph.
struct Subdivision {
    Graph graph;
    Integer q{1};
    std::vector<Point> vertex_point; // subdivision vertex -> source point

    int forward_vertex(const Point& p) const; // grid-aligned source point -> vertex
    MetricGraph unit_host() const;
    PointMap point_map() const;

    std::map<Point, int> index; // source point -> subdivision vertex
    std::vector<int> piece_edge; // subdivision edge -> source edge
    std::vector<Int> piece_pos;  // subdivision edge -> 1-based position along it
};

Subdivision unit_subdivision(const MetricGraph& g, const std::vector<Point>& marked);

// The k-th subdivision G^k: every edge replaced by a path with k inner
// vertices. Original vertex indices are preserved.
Graph subdivide_edges(const Graph& g, int k);

} // namespace tropdiv
