// SPDX-License-Identifier: MIT
#include "doctest.h"

#include "../support/corpus.hpp"
#include "tropdiv/divisor.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/topology.hpp"

#include <set>

using namespace tropdiv;
using namespace tropdiv::testsupport;

TEST_CASE("genus of small hosts") {
    CHECK(genus(path_graph(3).graph) == 0);
    CHECK(genus(banana(3).graph) == 2);
    CHECK(genus(k4().graph) == 3);
    CHECK(genus(cycle(4)) == 1);

    TropicalCurve c;
    c.metric = banana(3);
    c.infinite_edges.push_back(InfiniteEdge{"r1", 0, "end0"});
    CHECK(genus(c) == 2); // rays contribute nothing

    Graph disconnected;
    disconnected.add_vertex("a");
    disconnected.add_vertex("b");
    CHECK_THROWS_AS(genus(disconnected), validation_error);
}

TEST_CASE("canonical divisor values") {
    CHECK(canonical_divisor(cycle(3)).empty());

    Divisor kb = canonical_divisor(banana(3));
    CHECK(chips_at(kb, Point::vertex(0)) == 1);
    CHECK(chips_at(kb, Point::vertex(1)) == 1);
    CHECK(degree(kb) == 2 * genus(banana(3)) - 2);

    Divisor kp = canonical_divisor(path_graph(3));
    CHECK(chips_at(kp, Point::vertex(0)) == -1);
    CHECK(chips_at(kp, Point::vertex(1)) == 0);
    CHECK(chips_at(kp, Point::vertex(2)) == -1);
}

TEST_CASE("insert_point splits edges") {
    MetricGraph g = unit_graph(2, {{0, 1}});
    g.length = {Rational(2)};

    DerivedMetricGraph ins = insert_point(g, Point::interior(0, Rational(1, 2)));
    CHECK(ins.host.graph.edge_count() == 2);
    CHECK(ins.host.graph.vertex_count() == 3);
    std::multiset<Rational> lens{ins.host.edge_length(0), ins.host.edge_length(1)};
    CHECK(lens == std::multiset<Rational>{Rational(1, 2), Rational(3, 2)});

    DerivedMetricGraph same = insert_point(g, Point::vertex(1));
    CHECK(same.host.graph.edge_count() == 1);
    CHECK(same.host.graph.vertex_count() == 2);
    CHECK(same.map.forward(Point::vertex(1)) == Point::vertex(1));

    MetricGraph loop = unit_graph(1, {{0, 0}});
    DerivedMetricGraph split = insert_point(loop, Point::interior(0, Rational(1, 3)));
    CHECK(split.host.graph.edge_count() == 2);
    CHECK(split.host.graph.vertex_count() == 2);
    CHECK_FALSE(split.host.graph.has_self_edge());
    std::multiset<Rational> ll{split.host.edge_length(0), split.host.edge_length(1)};
    CHECK(ll == std::multiset<Rational>{Rational(1, 3), Rational(2, 3)});
    CHECK(genus(split.host) == genus(loop));
}

TEST_CASE("scale_lengths homothety") {
    MetricGraph g = unit_graph(2, {{0, 1}, {0, 1}});
    g.length = {Rational(3, 2), Rational(1)};

    DerivedMetricGraph id = scale_lengths(g, Rational(1));
    CHECK(id.host.edge_length(0) == Rational(3, 2));

    DerivedMetricGraph sc = scale_lengths(g, Rational(2));
    CHECK(sc.host.edge_length(0) == Rational(3));
    CHECK(sc.host.edge_length(1) == Rational(2));
    CHECK(sc.map.forward(Point::interior(0, Rational(3, 4))) == Point::interior(0, Rational(3, 2)));
    CHECK(sc.map.backward(Point::interior(0, Rational(3, 2))) ==
          Point::interior(0, Rational(3, 4)));
    CHECK(genus(sc.host) == genus(g));

    CHECK_THROWS_AS(scale_lengths(g, Rational(0)), validation_error);
    CHECK_THROWS_AS(scale_lengths(g, Rational(-2)), validation_error);
}

TEST_CASE("unit_subdivision grids") {
    MetricGraph one = unit_graph(2, {{0, 1}});
    one.length = {Rational(3, 2)};
    Subdivision s1 = unit_subdivision(one, {});
    CHECK(s1.q == 2);
    CHECK(s1.graph.edge_count() == 3);
    CHECK(s1.graph.vertex_count() == 4);

    MetricGraph marked = unit_graph(2, {{0, 1}});
    Point third = Point::interior(0, Rational(1, 3));
    Subdivision s2 = unit_subdivision(marked, {third});
    CHECK(s2.q == 3);
    CHECK(s2.graph.edge_count() == 3);
    int mv = s2.forward_vertex(third);
    CHECK(mv >= 0);
    CHECK(s2.vertex_point[mv] == third);

    Subdivision s3 = unit_subdivision(banana234(), {});
    CHECK(s3.graph.edge_count() == 9);
    CHECK(s3.graph.vertex_count() == 8);
    CHECK(genus(s3.graph) == 2);
}

TEST_CASE("subdivide_edges keeps original vertices first") {
    Graph g = cycle(3).graph;
    Graph g2 = subdivide_edges(g, 2);
    CHECK(g2.vertex_count() == 3 + 3 * 2);
    CHECK(g2.edge_count() == 9);
    for (int v = 0; v < 3; ++v) CHECK(g2.vertex_name(v) == g.vertex_name(v));
    CHECK(genus(g2) == genus(g));
    CHECK(subdivide_edges(g, 0).edge_count() == 3);
}

TEST_CASE("retraction of curve divisors") {
    TropicalCurve c;
    c.metric = banana(3);
    c.infinite_edges.push_back(InfiniteEdge{"r1", 0, "end0"});
    c.infinite_edges.push_back(InfiniteEdge{"r2", 1, "end1"});
    c.validate();

    Divisor finite_only;
    add_chip(finite_only, Point::vertex(1), 2);
    CHECK(retract_divisor(c, finite_only) == finite_only);

    Divisor on_end;
    add_chip(on_end, Point::unbounded_end(0), 1);
    Divisor r = retract_divisor(c, on_end);
    CHECK(chips_at(r, Point::vertex(0)) == 1);
    CHECK(degree(r) == degree(on_end));

    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        Divisor d;
        add_chip(d, Point::unbounded_end(static_cast<int>(rng.below(2))), rng.range(-2, 2));
        add_chip(d, Point::inf_interior(0, Rational(3, 2)), rng.range(-2, 2));
        add_chip(d, Point::vertex(1), rng.range(-2, 2));
        CHECK(degree(retract_divisor(c, d)) == degree(d));
    }
}

TEST_CASE("branch vertices and required point sets") {
    CHECK(branch_vertices(banana(3).graph) == std::vector<int>{0, 1});
    CHECK(branch_vertices(cycle(3).graph).empty());
    // a bare loop has no vertex of degree != 2, but its unique vertex still
    // anchors the cut structure
    MetricGraph lg = unit_graph(1, {{0, 0}});
    CHECK(branch_vertices(lg.graph) == std::vector<int>{0});
}

TEST_CASE("point canonicalization") {
    MetricGraph g = unit_graph(2, {{0, 1}});
    g.length = {Rational(2)};
    CHECK(make_point(g, 0, Rational(0)) == Point::vertex(0));
    CHECK(make_point(g, 0, Rational(2)) == Point::vertex(1));
    CHECK(make_point(g, 0, Rational(1)) == Point::interior(0, Rational(1)));
    CHECK_THROWS_AS(make_point(g, 0, Rational(3)), validation_error);
    CHECK(point_str(g, Point::interior(0, Rational(1, 2))) == "e1@1/2");
    CHECK(point_str(g, Point::vertex(0)) == "v0");
}
