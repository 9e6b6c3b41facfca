// SPDX-License-Identifier: MIT
// Acceptance battery: ten independent end-to-end checks over generated
// corpora, printing one PASS/FAIL line each. Exits nonzero when any fails.

#include "../support/corpus.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/io.hpp"
#include "tropdiv/permutation.hpp"
#include "tropdiv/plfunc.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tropdiv;
using namespace tropdiv::testsupport;

namespace {

struct Tally {
    long long checked = 0;
    long long failed = 0;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++failed;
            if (failed <= 5) std::cout << "    mismatch: " << what << "\n";
        }
    }
    bool pass() const { return checked > 0 && failed == 0; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RankOptions no_witness() {
    RankOptions opt;
    opt.want_witness = false;
    return opt;
}

std::string describe(const MetricGraph& g, const Divisor& d) {
    std::ostringstream os;
    os << "n=" << g.graph.vertex_count() << " m=" << g.graph.edge_count() << " d="
       << divisor_str(g, d);
    return os.str();
}

// The wide corpus shared by criteria 2, 3, 4, 7, and 9: 500 deterministic
// divisor instances spread over every connected multigraph with n <= 4
// vertices and m <= 5 edges (loops included), plus the subdivision-oracle
// rank of each instance.
struct Instance {
    int graph;
    Divisor d;
    Int oracle;
};

struct WideCorpus {
    std::vector<MetricGraph> graphs;
    std::vector<Instance> instances;
};

WideCorpus build_wide_corpus() {
    WideCorpus w;
    w.graphs = corpus(4, 5, true);
    Rng rng(7);
    const int total = 500;
    const int ng = static_cast<int>(w.graphs.size());
    for (int i = 0; i < total; ++i) {
        Instance inst;
        inst.graph = static_cast<int>(static_cast<long long>(i) * ng / total);
        inst.d = random_vertex_divisor(rng, w.graphs[inst.graph].graph, -2, 2);
        inst.oracle =
            rank_metric(w.graphs[inst.graph], inst.d, RankMethod::Subdivision, std::nullopt,
                        no_witness())
                .rank;
        w.instances.push_back(std::move(inst));
    }
    return w;
}

// ---------------------------------------------------------------------------
// criterion 1: on every loopless multigraph with n <= 3, m <= 3 (unit
// lengths) and every vertex divisor with values in [-2, 2], the exact
// enumeration, the subdivision oracle, and the direct graph search agree.
bool criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    std::vector<MetricGraph> graphs = corpus(3, 3, false);
    for (const MetricGraph& g : graphs) {
        const int n = g.graph.vertex_count();
        std::vector<Int> vals(n, -2);
        while (true) {
            Divisor d;
            for (int v = 0; v < n; ++v) add_chip(d, Point::vertex(v), vals[v]);
            Int r_graph = rank_graph(g.graph, d, no_witness()).rank;
            Int r_sub = rank_metric(g, d, RankMethod::Subdivision, std::nullopt, no_witness()).rank;
            RankResult enu =
                rank_metric(g, d, RankMethod::Enumeration, std::nullopt, no_witness());
            t.expect(enu.exact, "enumeration not exact on " + describe(g, d));
            t.expect(r_graph == r_sub && r_sub == enu.rank,
                     "rank disagreement on " + describe(g, d));

            int i = 0;
            while (i < n && vals[i] == 2) vals[i++] = -2;
            if (i == n) break;
            ++vals[i];
        }
    }
    double dt = seconds_since(t0);
    bool ok = t.pass() && dt < 600.0;
    std::printf("criterion 1: %s (%lld checks over %zu graphs, %.1fs)\n", ok ? "PASS" : "FAIL",
                t.checked, graphs.size(), dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 2: under a truncated search budget (slope cap 3 plus a term cap
// to keep the sweep bounded), every term the enumeration produces dominates
// the oracle rank, and truncated results carry the inexact flag.
bool criterion2(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    long long terms_seen = 0;
    for (const Instance& inst : w.instances) {
        const MetricGraph& g = w.graphs[inst.graph];
        EnumerationBudget budget;
        budget.slope_bound = 3;
        budget.term_cap = 4000;

        bool term_ok = true;
        RankOptions opt = no_witness();
        opt.term_observer = [&](Int term) {
            ++terms_seen;
            if (term < inst.oracle) term_ok = false;
        };
        RankResult r = rank_metric(g, inst.d, RankMethod::Enumeration, budget, opt);
        t.expect(term_ok, "a term fell below the oracle on " + describe(g, inst.d));
        t.expect(r.rank >= inst.oracle, "truncated rank below oracle on " + describe(g, inst.d));
        if (r.exact) {
            t.expect(r.rank == inst.oracle, "exact-flagged rank wrong on " + describe(g, inst.d));
        }
    }
    double dt = seconds_since(t0);
    bool ok = t.pass();
    std::printf("criterion 2: %s (%lld checks, %lld terms observed, %.1fs)\n",
                ok ? "PASS" : "FAIL", t.checked, terms_seen, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 3: the rank identity r(D) - r(K-D) - deg(D) - 1 + g = 0 holds on
// every wide-corpus instance and on a rational-length variant of each (edge
// lengths cycling through 1, 1/2, 3/2, 2), with the high-degree shortcut off.
bool criterion3(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    const Rational menu[4] = {Rational(1), Rational(1, 2), Rational(3, 2), Rational(2)};
    for (const Instance& inst : w.instances) {
        const MetricGraph& g = w.graphs[inst.graph];
        t.expect(riemann_roch_residual(g, inst.d) == 0,
                 "unit-length residual nonzero on " + describe(g, inst.d));

        MetricGraph varied = g;
        for (size_t e = 0; e < varied.length.size(); ++e) varied.length[e] = menu[e % 4];
        t.expect(riemann_roch_residual(varied, inst.d) == 0,
                 "rational-length residual nonzero on " + describe(varied, inst.d));
    }
    double dt = seconds_since(t0);
    bool ok = t.pass() && dt < 300.0;
    std::printf("criterion 3: %s (%lld residuals, %.1fs)\n", ok ? "PASS" : "FAIL", t.checked, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 4: the graph rank is invariant under edge subdivision. Loopless
// hosts are checked directly against G^1, G^2, G^3; hosts with self-edges
// start from G^1 (a bare self-edge is inert for chip-firing, so its graph
// rank legitimately differs from every subdivision), and all subdivided
// ranks must also match the metric oracle.
bool criterion4(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (const Instance& inst : w.instances) {
        const MetricGraph& g = w.graphs[inst.graph];
        bool loops = g.graph.has_self_edge();
        Int expected = inst.oracle;
        if (!loops) {
            Int r0 = rank_graph(g.graph, inst.d, no_witness()).rank;
            t.expect(r0 == expected, "graph rank differs from oracle on " + describe(g, inst.d));
        }
        for (int k = 1; k <= 3; ++k) {
            Graph gk = subdivide_edges(g.graph, k);
            Int rk = rank_graph(gk, inst.d, no_witness()).rank;
            t.expect(rk == expected,
                     "subdivision k=" + std::to_string(k) + " rank differs on " +
                         describe(g, inst.d));
        }
    }
    double dt = seconds_since(t0);
    bool ok = t.pass();
    std::printf("criterion 4: %s (%lld checks, %.1fs)\n", ok ? "PASS" : "FAIL", t.checked, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// exhaustive reducedness: nonnegative off the base, and every nonempty vertex
// set avoiding the base has a member that can fire without going negative.
bool subsets_say_reduced(const Graph& g, const Divisor& d, int v0) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        if (v != v0 && chips_at(d, Point::vertex(v)) < 0) return false;
    }
    std::vector<int> others;
    for (int v = 0; v < n; ++v) {
        if (v != v0) others.push_back(v);
    }
    for (unsigned mask = 1; mask < (1u << others.size()); ++mask) {
        std::vector<bool> in_set(n, false);
        for (size_t i = 0; i < others.size(); ++i) {
            if (mask & (1u << i)) in_set[others[i]] = true;
        }
        bool escapable = false;
        for (int v = 0; v < n && !escapable; ++v) {
            if (!in_set[v]) continue;
            int leaving = 0;
            for (const auto& [e, wvx] : g.incident(v)) {
                (void)e;
                if (!in_set[wvx]) ++leaving;
            }
            if (leaving > chips_at(d, Point::vertex(v))) escapable = true;
        }
        if (!escapable) return false;
    }
    return true;
}

// criterion 5: reduced-divisor toolkit. (a) reduction is idempotent, (b) it
// is constant on equivalence classes (100 random principal shifts per graph),
// (c) the burning test agrees with exhaustive subset checking on every host
// with at most 8 vertices, (d) the pinned banana example reduces exactly.
bool criterion5(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    Rng rng(11);
    for (const MetricGraph& g : w.graphs) {
        const int n = g.graph.vertex_count();
        for (int it = 0; it < 100; ++it) {
            Divisor d = random_vertex_divisor(rng, g.graph, -3, 3);
            GraphReduction red = reduce_graph(g.graph, d, 0);
            t.expect(reduce_graph(g.graph, red.reduced, 0).reduced == red.reduced,
                     "reduction not idempotent on " + describe(g, d));
            t.expect(combine(1, d, 1, principal_divisor(g.graph, red.certificate)) == red.reduced,
                     "reduction certificate wrong on " + describe(g, d));

            std::vector<Int> script(n);
            for (int v = 0; v < n; ++v) script[v] = rng.range(-2, 2);
            Divisor shifted = combine(1, d, 1, principal_divisor(g.graph, script));
            t.expect(reduce_graph(g.graph, shifted, 0).reduced == red.reduced,
                     "reduction not class-constant on " + describe(g, d));
        }
    }

    // (c) burning vs subsets, on the corpus hosts and their subdivisions up
    // to the 8-vertex limit
    std::vector<Graph> small;
    for (const MetricGraph& g : w.graphs) {
        small.push_back(g.graph);
        Graph g1 = subdivide_edges(g.graph, 1);
        if (g1.vertex_count() <= 8) small.push_back(g1);
    }
    for (const Graph& g : small) {
        for (int it = 0; it < 20; ++it) {
            Divisor d = random_vertex_divisor(rng, g, -2, 2);
            for (const Divisor& probe : {d, reduce_graph(g, d, 0).reduced}) {
                bool burn = is_reduced_graph(g, probe, 0);
                bool subsets = subsets_say_reduced(g, probe, 0);
                t.expect(burn == subsets, "burn/subset disagreement");
                is_reduced_graph(g, probe, 0, true); // library-internal cross check
            }
        }
    }

    // (d) pinned example: lengths (2,3,4), D = 3(v1), base v0
    {
        MetricGraph g = banana234();
        Divisor d;
        add_chip(d, Point::vertex(1), 3);
        MetricReduction red = reduce_metric(g, d, Point::vertex(0));
        Divisor expect;
        add_chip(expect, Point::vertex(0), 1);
        add_chip(expect, Point::interior(1, Rational(1)), 1);
        add_chip(expect, Point::interior(2, Rational(2)), 1);
        t.expect(red.reduced == expect, "banana (2,3,4) example reduced wrongly");
        t.expect(divisor_of(g, red.certificate) == combine(1, red.reduced, -1, d),
                 "banana example certificate wrong");
        t.expect(is_reduced_metric(g, red.reduced, Point::vertex(0)),
                 "banana example not recognized as reduced");
    }
    double dt = seconds_since(t0);
    bool ok = t.pass();
    std::printf("criterion 5: %s (%lld checks, %.1fs)\n", ok ? "PASS" : "FAIL", t.checked, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 6: permutation divisors. For 100 random orderings per graph:
// deg(nu_P) = g - 1, the class of nu_P is empty, nu_P + nu_Pbar = K, and
// inserting a fresh segment point between its boundary points leaves nu_P
// unchanged.
bool criterion6(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    Rng rng(13);
    for (const MetricGraph& g : w.graphs) {
        Divisor k = canonical_divisor(g);
        Int gen = genus(g);
        for (int it = 0; it < 100; ++it) {
            Permutation p = random_perm(rng, g);
            validate_permutation(g, p);
            Divisor nu = nu_divisor(g, p);
            t.expect(degree(nu) == gen - 1, "deg nu != g-1 on " + describe(g, nu));
            t.expect(epsilon(g, nu) == 1, "nu class not empty on " + describe(g, nu));
            Divisor nu_rev = nu_divisor(g, reverse_perm(p));
            t.expect(combine(1, nu, 1, nu_rev) == k, "nu + reversed nu != K");

            SegmentStructure cut = cut_segments(g, p.order);
            if (!cut.segments.empty()) {
                const PSegment& seg = cut.segments[rng.below(cut.segments.size())];
                auto ia = std::find(p.order.begin(), p.order.end(), seg.end_a);
                auto ib = std::find(p.order.begin(), p.order.end(), seg.end_b);
                long at = std::min(ia - p.order.begin(), ib - p.order.begin()) + 1;
                Permutation q = p;
                q.order.insert(q.order.begin() + at, seg.sample);
                validate_permutation(g, q);
                t.expect(nu_divisor(g, q) == nu, "segment-point insertion changed nu");
            }
        }
    }
    double dt = seconds_since(t0);
    bool ok = t.pass();
    std::printf("criterion 6: %s (%lld checks, %.1fs)\n", ok ? "PASS" : "FAIL", t.checked, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 7: the two faces of the rank pairing. On every instance exactly
// one of {class contains an effective divisor, some nu_P dominates the
// reduced form with nu_P - D empty} holds; whenever deg(D) = g - 1, the
// emptiness bits of D and K - D agree (also checked on synthesized
// degree-(g-1) divisors so the pairing case is never vacuous).
bool criterion7(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    long long pairing_cases = 0;
    for (const Instance& inst : w.instances) {
        const MetricGraph& g = w.graphs[inst.graph];
        RRConditionsReport rep = check_rr_conditions(g, inst.d);
        t.expect(rep.rr1_ok, "dichotomy failed on " + describe(g, inst.d));
        t.expect(rep.rr1_effective == (inst.oracle >= 0),
                 "effectivity disagrees with oracle rank on " + describe(g, inst.d));

        NonspecialWitness nw = nonspecial_witness(g, inst.d);
        t.expect(nw.rank_nonnegative == (inst.oracle >= 0),
                 "witness search disagrees with oracle rank on " + describe(g, inst.d));
        t.expect(nw.witness.has_value() != nw.rank_nonnegative,
                 "dichotomy not exclusive on " + describe(g, inst.d));
        if (nw.witness) {
            Divisor nu = nu_divisor(g, *nw.witness);
            t.expect(divisor_leq(nw.reduced, nu), "witness nu does not dominate the reduced form");
            t.expect(epsilon(g, combine(1, nu, -1, inst.d)) == 0,
                     "nu - d not equivalent to effective on " + describe(g, inst.d));
        }
        if (rep.rr2_ok.has_value()) {
            ++pairing_cases;
            t.expect(*rep.rr2_ok, "pairing bits disagree on " + describe(g, inst.d));
        }
    }
    Rng rng(17);
    for (size_t gi = 0; gi < w.graphs.size(); ++gi) {
        const MetricGraph& g = w.graphs[gi];
        Divisor k = canonical_divisor(g);
        for (int it = 0; it < 3; ++it) {
            Divisor d = random_vertex_divisor(rng, g.graph, -2, 2);
            add_chip(d, Point::vertex(0), genus(g) - 1 - degree(d));
            ++pairing_cases;
            t.expect(epsilon(g, d) == epsilon(g, combine(1, k, -1, d)),
                     "pairing bits disagree on " + describe(g, d));
        }
    }
    double dt = seconds_since(t0);
    bool ok = t.pass() && pairing_cases > 0;
    std::printf("criterion 7: %s (%lld checks, %lld pairing cases, %.1fs)\n", ok ? "PASS" : "FAIL",
                t.checked, pairing_cases, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 8: 1000 random valid piecewise linear functions have principal
// divisors of degree zero, and non-integer slopes are rejected.
bool criterion8(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    Rng rng(19);
    const int ng = static_cast<int>(w.graphs.size());
    for (int i = 0; i < 1000; ++i) {
        const MetricGraph& g = w.graphs[i % ng];
        PLFunction f = random_pl(rng, g);
        t.expect(degree(divisor_of(g, f)) == 0, "principal divisor of nonzero degree");
    }
    long long rejected = 0;
    for (const MetricGraph& g : w.graphs) {
        if (g.graph.edge_count() == 0) continue;
        std::vector<Rational> values(g.graph.vertex_count(), Rational(0));
        std::vector<std::vector<PLBreak>> samples(g.graph.edge_count());
        samples[0].push_back(PLBreak{g.edge_length(0) / Rational(2), Rational(1, 3)});
        bool threw = false;
        try {
            make_pl(g, values, samples);
        } catch (const validation_error&) {
            threw = true;
        }
        ++rejected;
        t.expect(threw, "fractional slope accepted");
    }
    double dt = seconds_since(t0);
    bool ok = t.pass() && rejected > 0;
    std::printf("criterion 8: %s (%lld checks, %.1fs)\n", ok ? "PASS" : "FAIL", t.checked, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 9: rank subadditivity r(D + D') >= r(D) + r(D') on all same-graph
// instance pairs with both ranks nonnegative, plus canonical pairs so the
// check never goes vacuous.
bool criterion9(const WideCorpus& w) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    long long pairs = 0;
    for (size_t i = 0; i < w.instances.size(); ++i) {
        for (size_t j = i + 1; j < w.instances.size(); ++j) {
            const Instance& a = w.instances[i];
            const Instance& b = w.instances[j];
            if (a.graph != b.graph || a.oracle < 0 || b.oracle < 0) continue;
            ++pairs;
            const MetricGraph& g = w.graphs[a.graph];
            Divisor sum = combine(1, a.d, 1, b.d);
            Int r = rank_metric(g, sum, RankMethod::Subdivision, std::nullopt, no_witness()).rank;
            t.expect(r >= a.oracle + b.oracle, "subadditivity failed on " + describe(g, sum));
        }
    }
    for (const MetricGraph& g : w.graphs) {
        Divisor k = canonical_divisor(g);
        if (degree(k) < 0) continue;
        Int rk = rank_metric(g, k, RankMethod::Subdivision, std::nullopt, no_witness()).rank;
        if (rk < 0) continue;
        ++pairs;
        Divisor twok = combine(2, k, 0, k);
        Int r2 = rank_metric(g, twok, RankMethod::Subdivision, std::nullopt, no_witness()).rank;
        t.expect(r2 >= 2 * rk, "subadditivity failed on doubled canonical of " + describe(g, k));
    }
    double dt = seconds_since(t0);
    bool ok = t.pass() && pairs > 0;
    std::printf("criterion 9: %s (%lld pairs, %.1fs)\n", ok ? "PASS" : "FAIL", pairs, dt);
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 10: the command-line surface. Checked-in documents round-trip
// byte for byte and pass rrcheck with exit code 0; 1000 deterministic
// mutations of them either parse or raise a structured parse error, never
// anything else.
bool criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    const char* suite[] = {"banana234.tg", "unitk4.tg", "cycle3.tg", "curve.tg", "multi.tg"};
    std::vector<std::string> texts;
    for (const char* name : suite) {
        std::string path = std::string(TROPDIV_TEST_DATA_DIR) + "/" + name;
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        t.expect(!text.empty(), std::string("missing suite file ") + name);
        texts.push_back(text);

        try {
            t.expect(serialize_document(parse_document(text)) == text,
                     std::string("round trip not byte-identical for ") + name);
        } catch (const std::exception& e) {
            t.expect(false, std::string("suite file failed to parse: ") + e.what());
        }

        std::ostringstream out, err;
        int code = run({"rrcheck", path}, out, err);
        t.expect(code == 0, std::string("rrcheck nonzero on ") + name + ": " + err.str());
    }

    Rng rng(99);
    long long fuzz_parsed = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string text = texts[i % texts.size()];
        int edits = 1 + static_cast<int>(rng.below(4));
        for (int e = 0; e < edits && !text.empty(); ++e) {
            switch (rng.below(5)) {
            case 0:
                text[rng.below(text.size())] = static_cast<char>(rng.below(256));
                break;
            case 1:
                text.insert(rng.below(text.size() + 1), 1, static_cast<char>(rng.below(256)));
                break;
            case 2: {
                size_t pos = rng.below(text.size());
                text.erase(pos, 1 + rng.below(8));
                break;
            }
            case 3:
                text.resize(rng.below(text.size() + 1));
                break;
            default: {
                size_t pos = rng.below(text.size());
                text += text.substr(pos, 1 + rng.below(16));
                break;
            }
            }
        }
        try {
            Document doc = parse_document(text);
            ++fuzz_parsed;
            std::string canon = serialize_document(doc);
            t.expect(serialize_document(parse_document(canon)) == canon,
                     "mutant serialization not canonical");
        } catch (const validation_error&) {
            // structured rejection is the expected outcome
        } catch (const std::exception& e) {
            t.expect(false, std::string("fuzz case leaked an exception: ") + e.what());
        }
        ++t.checked;
    }
    double dt = seconds_since(t0);
    bool ok = t.pass();
    std::printf("criterion 10: %s (%lld checks, %lld mutants parsed cleanly, %.1fs)\n",
                ok ? "PASS" : "FAIL", t.checked, fuzz_parsed, dt);
    return ok;
}

bool guarded(int number, const std::function<bool()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::printf("criterion %d: FAIL (exception: %s)\n", number, e.what());
        return false;
    }
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    std::cout << "building wide corpus (n<=4, m<=5 multigraphs, 500 instances)...\n";
    WideCorpus w = build_wide_corpus();
    std::cout << "  " << w.graphs.size() << " graphs, " << w.instances.size()
              << " oracle-ranked instances (" << seconds_since(t0) << "s)\n";

    bool ok = true;
    ok &= guarded(1, [] { return criterion1(); });
    ok &= guarded(2, [&] { return criterion2(w); });
    ok &= guarded(3, [&] { return criterion3(w); });
    ok &= guarded(4, [&] { return criterion4(w); });
    ok &= guarded(5, [&] { return criterion5(w); });
    ok &= guarded(6, [&] { return criterion6(w); });
    ok &= guarded(7, [&] { return criterion7(w); });
    ok &= guarded(8, [&] { return criterion8(w); });
    ok &= guarded(9, [&] { return criterion9(w); });
    ok &= guarded(10, [] { return criterion10(); });

    std::printf("acceptance: %s (total %.1fs)\n", ok ? "PASS" : "FAIL", seconds_since(t0));
    return ok ? 0 : 1;
}
