// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/divisor.hpp"
#include "tropdiv/permutation.hpp"
#include "tropdiv/plfunc.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace tropdiv {

// Data attaining the rank minimum: an equivalent divisor, an ordering of the
// relevant points, and the function witnessing the equivalence. Produced by
// the enumeration method; points refer to the host the rank was asked on.
struct RankCertificate {
    Divisor d_prime;
    Permutation perm;
    PLFunction f;
};

struct RankResult {
    Int rank = -1;
    // False when a truncated search budget may have missed the optimum; the
    // rank is then an upper bound only.
    bool exact = true;
    // Effective divisor E with deg(E) = rank + 1 and d - E not equivalent to
    // anything effective.
    Divisor witness_unreachable;
    std::optional<RankCertificate> certificate;
};

// Search budget for the enumeration method. slope_bound caps |F(e)| on
// spanning-tree edges; p caps deg_plus of the principal part a candidate
// function may contribute. A budget covering slopes up to p loses nothing:
// a function whose principal part has deg_plus <= p has every slope <= p
// (cut the graph along a level set of the function: the slopes crossing the
// cut sum to the number of chips above it), and candidates beyond that cap
// never beat the optimum. term_cap stops the search after that many terms.
struct EnumerationBudget {
    Integer slope_bound{1};
    Int p = 0;
    bool exact = false;
    std::optional<long long> term_cap;
};

struct RankOptions {
    // deg(d) > 2g - 2 shortcut in rank_graph; off so verification paths never
    // assume what they are checking.
    bool high_degree_shortcut = false;
    bool want_witness = true;
    // Test mode: recheck that every effective divisor of degree <= rank is
    // reachable. Exponential; only sensible on tiny hosts.
    bool exhaustive_verify = false;
    // Called with every enumeration term before the min-reduction.
    std::function<void(Int)> term_observer;
};

enum class RankMethod { Auto, Subdivision, Enumeration };

// (max degree + p)^(edge count) of g.
Integer slope_bound(const MetricGraph& g, Int p);

// The budget rank_metric uses for this input when none is supplied: the full
// slope bound on the rewritten host, no term cap. Callers can tighten the
// fields before passing it back in.
EnumerationBudget default_enumeration_budget(const MetricGraph& g, const Divisor& d);

// All spanning trees as sorted edge-id lists, lexicographic order. Requires a
// connected loopless graph.
std::vector<std::vector<int>> spanning_trees(const Graph& g);

// Kirchhoff count (determinant of the reduced Laplacian); cross-checks the
// explicit enumeration.
Integer spanning_tree_count(const Graph& g);

// The piecewise linear function determined by integer slopes on the edges of
// a spanning tree: f(root) = 0, values propagate along tree paths, and every
// non-tree edge gets the unique extension whose interior order is 0 or +1.
// With end values A <= B and length L: integral (B-A)/L extends linearly;
// otherwise the break sits at distance (B-A) - floor((B-A)/L)*L from the
// higher end, slopes floor((B-A)/L) then that plus one.
PLFunction extend_tree_function(const MetricGraph& g, const std::vector<int>& tree,
                                const std::map<int, Int>& slope, int root);

// Chip-firing rank over the graph's vertices.
RankResult rank_graph(const Graph& g, const Divisor& d, const RankOptions& opt = {});

// Rank on a metric graph. Subdivision (the default) reduces to rank_graph on
// a unit subdivision; enumeration minimizes deg_plus(d + div(f) - nu_P) - 1
// over spanning trees, slope assignments, and orderings, and also returns the
// argmin certificate. Without an explicit budget the enumeration runs exactly.
RankResult rank_metric(const MetricGraph& g, const Divisor& d,
                       RankMethod method = RankMethod::Auto,
                       const std::optional<EnumerationBudget>& budget = std::nullopt,
                       const RankOptions& opt = {});

// Rank on a tropical curve: retract chips off the rays, then rank_metric.
RankResult rank_tropical(const TropicalCurve& c, const Divisor& d,
                         RankMethod method = RankMethod::Auto,
                         const std::optional<EnumerationBudget>& budget = std::nullopt,
                         const RankOptions& opt = {});

// r(d) - r(K - d) - deg(d) - 1 + g. Zero for every divisor.
Int riemann_roch_residual(const MetricGraph& g, const Divisor& d);
Int riemann_roch_residual_curve(const TropicalCurve& c, const Divisor& d);

struct RRConditionsReport {
    // Exactly one of the two branches below must hold.
    bool rr1_ok = false;
    bool rr1_effective = false;   // d is equivalent to an effective divisor
    bool rr1_witness_ok = false;  // witness ordering P has nu_P - d reachable
    // Set when deg(d) = g - 1: emptiness agrees between d and K - d.
    std::optional<bool> rr2_ok;
};

RRConditionsReport check_rr_conditions(const MetricGraph& g, const Divisor& d,
                                       bool require_rr2 = false);

} // namespace tropdiv
