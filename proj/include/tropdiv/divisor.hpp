// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/topology.hpp"

#include <map>

namespace tropdiv {

// Element of the free abelian group on points: a sparse map with no zero
// values stored. Deterministic iteration order follows the Point order, so
// serialization is byte-stable. Host binding is by convention: operations
// take the host explicitly and validate point membership.
using Divisor = std::map<Point, Int>;

Int degree(const Divisor& d);
Int deg_plus(const Divisor& d);
bool is_effective(const Divisor& d);

// d[p] += delta, erasing the entry when it reaches zero.
void add_chip(Divisor& d, const Point& p, Int delta);
Int chips_at(const Divisor& d, const Point& p);

// a*d1 + b*d2 with zero entries dropped.
Divisor combine(Int a, const Divisor& d1, Int b, const Divisor& d2);

// a <= b pointwise.
bool divisor_leq(const Divisor& a, const Divisor& b);

Divisor map_divisor(const Divisor& d, const std::function<Point(const Point&)>& f);

void validate_on_host(const MetricGraph& g, const Divisor& d);
void validate_on_curve(const TropicalCurve& c, const Divisor& d);
void validate_vertex_supported(const Graph& g, const Divisor& d);

// deg(v) - 2 at every vertex; degree 2*genus - 2.
Divisor canonical_divisor(const MetricGraph& g);
// Curve version: vertex degrees count attached rays, unbounded ends get -1.
Divisor canonical_divisor_curve(const TropicalCurve& c);

// Moves chips on ray interiors and unbounded ends to the attachment vertex.
// The result lives on c.metric. Degree is preserved.
Divisor retract_divisor(const TropicalCurve& c, const Divisor& d);

// "(v0)+2(e1@1/2)-(v1)" style display; "0" for the zero divisor.
std::string divisor_str(const MetricGraph& g, const Divisor& d);
std::string curve_divisor_str(const TropicalCurve& c, const Divisor& d);

} // namespace tropdiv
