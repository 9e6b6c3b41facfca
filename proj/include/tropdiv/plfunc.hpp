// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/divisor.hpp"
#include "tropdiv/topology.hpp"

#include <vector>

namespace tropdiv {

struct PLBreak {
    Rational offset; // 0 < offset < edge length
    Rational value;
};

// Continuous piecewise linear function with integer slopes on a finite metric
// graph. Vertex values plus sorted interior breakpoints per edge determine
// the function; breakpoints where the slope does not change are normalized
// away, so the representation is canonical.
struct PLFunction {
    std::vector<Rational> vertex_value;            // size = vertex count
    std::vector<std::vector<PLBreak>> edge_breaks; // size = edge count
};

// Builds and validates a PLFunction. Samples are per-edge breakpoint lists;
// endpoint samples (offset 0 or length) are allowed and must agree with the
// vertex values. Rejects non-integer slopes, conflicting samples, and
// out-of-range offsets.
PLFunction make_pl(const MetricGraph& g, std::vector<Rational> vertex_values,
                   std::vector<std::vector<PLBreak>> samples);

PLFunction pl_constant(const MetricGraph& g, const Rational& value);

Rational pl_evaluate(const MetricGraph& g, const PLFunction& f, const Point& p);

// Sum of outgoing slopes at p; zero except at vertices and breakpoints.
Int pl_order_at(const MetricGraph& g, const PLFunction& f, const Point& p);

using OrderMap = std::map<Point, Int>;
OrderMap order_map(const MetricGraph& g, const PLFunction& f);

// The divisor D_f with D_f(p) = order of f at p. Its degree is always zero.
Divisor divisor_of(const MetricGraph& g, const PLFunction& f);

// a*f + b*h, with breakpoints merged and the result normalized.
PLFunction pl_combine(const MetricGraph& g, Int a, const PLFunction& f, Int b, const PLFunction& h);

bool pl_equal(const PLFunction& a, const PLFunction& b);

} // namespace tropdiv
