// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/divisor.hpp"
#include "tropdiv/topology.hpp"

#include <vector>

namespace tropdiv {

// An ordered sequence of distinct points. Valid permutations cover the
// extended branch set and cut every cycle at least twice (equivalently, no
// segment closes into a loop), so the segment structure below is defined.
struct Permutation {
    std::vector<Point> order;
};

// A maximal path between two support points whose interior avoids the
// support. Multi-edge parallels stay distinct; primary_edge is the first
// edge on the walk from end_a, and sample is an interior point of the
// segment (handy for insertion tests and diagnostics).
struct PSegment {
    Point end_a;
    Point end_b;
    int primary_edge = -1;
    Point sample;
};

struct SegmentStructure {
    std::vector<Point> support; // sorted
    std::vector<PSegment> segments;
    // per support index: number of segments incident (loops would count
    // twice, but valid structures have none)
    std::vector<int> segment_degree;
};

// Cuts the host at the support points, passing through non-support degree-2
// vertices. loop_segments collects segments whose two ends coincide; the
// strict variant rejects them.
SegmentStructure cut_segments_lenient(const MetricGraph& g, const std::vector<Point>& support,
                                      std::vector<PSegment>* loop_segments);
SegmentStructure cut_segments(const MetricGraph& g, const std::vector<Point>& support);

void validate_permutation(const MetricGraph& g, const Permutation& p);

// nu(v) = (number of segments at v whose other end precedes v in P) - 1 for
// every support point. Its degree is always genus - 1.
Divisor nu_divisor(const MetricGraph& g, const Permutation& p);

Permutation reverse_perm(const Permutation& p);

// Canonical minimal support: extended branch vertices, midpoints of
// self-edges, the extra points, and iteratively the smallest interior vertex
// of any remaining loop segment (falling back to the smallest vertex on
// branchless hosts). Every valid permutation support contains a set of this
// shape up to transversal choice.
std::vector<Point> required_support(const MetricGraph& g, const std::vector<Point>& extra = {});

} // namespace tropdiv
