// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/divisor.hpp"
#include "tropdiv/permutation.hpp"
#include "tropdiv/plfunc.hpp"
#include "tropdiv/topology.hpp"

#include <optional>
#include <vector>

namespace tropdiv {

// Base-reduced form of a vertex-supported divisor together with the firing
// script that produced it: principal_divisor(g, certificate) = reduced - input.
// The script is normalized so certificate[v0] = 0.
struct GraphReduction {
    Divisor reduced;
    std::vector<Int> certificate;
};

// Metric counterpart; the certificate is a PL function f on the host with
// divisor_of(f) = reduced - input.
struct MetricReduction {
    Divisor reduced;
    PLFunction certificate;
};

// Cut data for one boundary vertex of a vertex set: how many edges leave the
// set there versus how many chips sit on the vertex.
struct SaturationReport {
    int edges_leaving = 0;
    Int chips = 0;
    bool saturated = false;
};

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<PLFunction> witness; // divisor_of(witness) = d2 - d1
};

// Outcome of the effective-or-dominated dichotomy: either the divisor class
// contains an effective member, or some nu_P dominates its reduced form.
struct NonspecialWitness {
    bool rank_nonnegative = false;
    std::optional<Permutation> witness;
    Divisor reduced;
};

// The divisor of a firing script: each vertex v sends script[v] chips along
// every incident edge (self-edges cancel).
Divisor principal_divisor(const Graph& g, const std::vector<Int>& script);

// Two-phase reduction: layered set-firings make everything off v0
// nonnegative, then repeated burn-and-fire rounds reach the reduced form.
GraphReduction reduce_graph(const Graph& g, const Divisor& d, int v0);

// Burn test; with exhaustive set (hosts up to 12 vertices) every subset is
// checked independently and a disagreement trips an invariant failure.
bool is_reduced_graph(const Graph& g, const Divisor& d, int v0, bool exhaustive = false);

SaturationReport saturation(const Graph& g, const Divisor& d, const std::vector<bool>& in_set,
                            int v);

// Reduction on a metric graph via the unit subdivision marking supp(d) and
// the base point. Works for any rational lengths and offsets.
MetricReduction reduce_metric(const MetricGraph& g, const Divisor& d, const Point& base);

bool is_reduced_metric(const MetricGraph& g, const Divisor& d, const Point& base);

// Lexicographically smallest vertex name; ties cannot occur.
int canonical_base_vertex(const Graph& g);

EquivalenceResult equivalent(const MetricGraph& g, const Divisor& d1, const Divisor& d2);

// 0 when the class of d contains an effective divisor, 1 otherwise.
int epsilon(const MetricGraph& g, const Divisor& d);

NonspecialWitness nonspecial_witness(const MetricGraph& g, const Divisor& d);

} // namespace tropdiv
