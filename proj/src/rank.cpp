// SPDX-License-Identifier: MIT
#include "tropdiv/rank.hpp"

#include "tropdiv/errors.hpp"
#include "tropdiv/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace tropdiv {

namespace {

Int iabs(Int v) { return v < 0 ? -v : v; }

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::vector<Int> chip_vector(const Graph& g, const Divisor& d) {
    std::vector<Int> chips(g.vertex_count(), 0);
    for (const auto& [pt, c] : d) chips[pt.id] = c;
    return chips;
}

Divisor vertex_divisor(const std::vector<Int>& chips) {
    Divisor d;
    for (int v = 0; v < static_cast<int>(chips.size()); ++v) {
        if (chips[v] != 0) d[Point::vertex(v)] = chips[v];
    }
    return d;
}

// Memoized chip-firing rank. Keys are reduced chip vectors, so equivalent
// divisors share entries and the recursion r(d) = 1 + min_v r(d - v)
// terminates when the reduced form goes negative at the base vertex.
class GraphRanker {
public:
    GraphRanker(const Graph& g, int base) : g_(g), base_(base) {}

    bool unreachable(const std::vector<Int>& chips) {
        GraphReduction red = reduce_graph(g_, vertex_divisor(chips), base_);
        return chips_at(red.reduced, Point::vertex(base_)) < 0;
    }

    Int rank_of(const std::vector<Int>& chips) {
        GraphReduction red = reduce_graph(g_, vertex_divisor(chips), base_);
        std::vector<Int> rvec = chip_vector(g_, red.reduced);
        if (rvec[base_] < 0) return -1;
        auto it = memo_.find(rvec);
        if (it != memo_.end()) return it->second;
        Int best = 0;
        bool first = true;
        std::vector<Int> next = rvec;
        for (int v = 0; v < g_.vertex_count() && best != -1; ++v) {
            next[v] -= 1;
            Int r = rank_of(next);
            next[v] += 1;
            if (first || r < best) {
                best = r;
                first = false;
            }
        }
        Int out = 1 + best;
        memo_.emplace(std::move(rvec), out);
        return out;
    }

private:
    const Graph& g_;
    int base_;
    std::map<std::vector<Int>, Int> memo_;
};

// Lexicographically first effective vertex divisor E of degree k with
// chips - E unreachable, as a nondecreasing vertex tuple scan.
std::optional<Divisor> first_failing(GraphRanker& ranker, const Graph& g,
                                     const std::vector<Int>& chips, Int k) {
    const int n = g.vertex_count();
    std::vector<int> pick(static_cast<size_t>(k), 0);
    while (true) {
        std::vector<Int> probe = chips;
        for (int v : pick) probe[v] -= 1;
        if (ranker.unreachable(probe)) {
            Divisor e;
            for (int v : pick) add_chip(e, Point::vertex(v), 1);
            return e;
        }
        int i = static_cast<int>(pick.size()) - 1;
        while (i >= 0 && pick[i] == n - 1) --i;
        if (i < 0) return std::nullopt;
        int next = pick[i] + 1;
        for (int j = i; j < static_cast<int>(pick.size()); ++j) pick[j] = next;
    }
}

// Unit-grid model of (g, d): marked points are the divisor support plus one
// midpoint per self-edge, so chips land on vertices and no grid edge is a
// self-edge (a bare loop would be inert for chip-firing and give the wrong
// rank).
struct UnitModel {
    Subdivision sub;
    Divisor d_star;
};

UnitModel unit_model(const MetricGraph& g, const Divisor& d) {
    std::vector<Point> marks;
    for (const auto& [pt, c] : d) {
        (void)c;
        marks.push_back(pt);
    }
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        if (g.graph.edge(e).u == g.graph.edge(e).v) {
            marks.push_back(Point::interior(e, g.edge_length(e) / Rational(2)));
        }
    }
    UnitModel m{unit_subdivision(g, marks), {}};
    for (const auto& [pt, c] : d) {
        add_chip(m.d_star, Point::vertex(m.sub.forward_vertex(pt)), c);
    }
    return m;
}

Divisor lift_from_grid(const Subdivision& sub, const Divisor& d) {
    return map_divisor(d, [&sub](const Point& p) { return sub.vertex_point.at(p.id); });
}

RankResult rank_subdivision(const MetricGraph& g, const Divisor& d, const RankOptions& opt) {
    UnitModel m = unit_model(g, d);
    RankResult inner = rank_graph(m.sub.graph, m.d_star, opt);
    RankResult out;
    out.rank = inner.rank;
    if (opt.want_witness) out.witness_unreachable = lift_from_grid(m.sub, inner.witness_unreachable);
    return out;
}

// First unreachable effective divisor of degree rank + 1, scanned over the
// unit-grid points of the host. One always exists at any level above the
// true rank, so this also serves budget-truncated upper bounds.
Divisor metric_witness(const MetricGraph& g, const Divisor& d, Int rank) {
    UnitModel m = unit_model(g, d);
    GraphRanker ranker(m.sub.graph, canonical_base_vertex(m.sub.graph));
    auto e = first_failing(ranker, m.sub.graph, chip_vector(m.sub.graph, m.d_star), rank + 1);
    if (!e) throw invariant_violation("no unreachable witness at rank + 1");
    return lift_from_grid(m.sub, *e);
}

// ---------------------------------------------------------------------------
// Enumeration method.

// Input host rewritten for the search: every ordering-relevant point promoted
// to a vertex (which also splits self-edges) and lengths scaled to integers,
// so slope arithmetic stays in 64 bits. fwd/bwd translate points between the
// input host and the search host; alpha is the applied length scale.
struct EnumHost {
    MetricGraph host;
    std::function<Point(const Point&)> fwd;
    std::function<Point(const Point&)> bwd;
    Integer alpha{1};
    std::vector<Int> len;
    std::vector<Int> chips;
    std::vector<char> in_base;
};

EnumHost build_enum_host(const MetricGraph& g, const Divisor& d) {
    std::vector<Point> support;
    {
        std::vector<Point> extra;
        for (const auto& [pt, c] : d) {
            (void)c;
            extra.push_back(pt);
        }
        support = required_support(g, extra);
    }
    std::vector<Point> to_insert;
    for (const Point& p : support) {
        if (p.kind == Point::Kind::Interior) to_insert.push_back(p);
    }
    DerivedMetricGraph ins = insert_points(g, to_insert);
    if (ins.host.graph.has_self_edge()) {
        throw invariant_violation("loop elimination left a self-edge");
    }
    Integer alpha = 1;
    for (const Rational& len : ins.host.length) alpha = lcm(alpha, Integer(len.get_den()));
    DerivedMetricGraph scl = scale_lengths(ins.host, Rational(alpha));

    EnumHost h;
    h.host = scl.host;
    h.alpha = alpha;
    auto ins_f = ins.map.forward;
    auto ins_b = ins.map.backward;
    auto scl_f = scl.map.forward;
    auto scl_b = scl.map.backward;
    h.fwd = [ins_f, scl_f](const Point& p) { return scl_f(ins_f(p)); };
    h.bwd = [ins_b, scl_b](const Point& p) { return ins_b(scl_b(p)); };

    for (int e = 0; e < h.host.graph.edge_count(); ++e) {
        const Rational& len = h.host.edge_length(e);
        if (!rational_is_integer(len)) throw invariant_violation("length scaling left a fraction");
        h.len.push_back(to_int_checked(Integer(len.get_num()), "edge length"));
    }
    h.chips.assign(h.host.graph.vertex_count(), 0);
    for (const auto& [pt, c] : d) {
        Point hp = h.fwd(pt);
        if (hp.kind != Point::Kind::Vertex) throw invariant_violation("support promotion failed");
        h.chips[hp.id] += c;
    }
    h.in_base.assign(h.host.graph.vertex_count(), 0);
    for (const Point& s : support) {
        Point hp = h.fwd(s);
        if (hp.kind != Point::Kind::Vertex) throw invariant_violation("support promotion failed");
        h.in_base[hp.id] = 1;
    }
    return h;
}

// Outgoing slope at the end with value a of a non-tree edge to value b,
// length len, under the minimal-break extension: the piece next to the lower
// end has slope floor(diff/len), the piece next to the higher end one more
// (or the same when diff is a multiple of len).
Int out_slope(Int a, Int b, Int len) {
    if (a <= b) return (b - a) / len;
    Int diff = a - b;
    Int q = diff / len;
    return diff % len == 0 ? -q : -(q + 1);
}

// Order of the candidate function at v; valid once every neighbor of v has
// its value assigned. Tree-edge slopes divide exactly by construction.
Int vertex_order(const Graph& g, const std::vector<Int>& len, const std::vector<char>& in_tree,
                 const std::vector<Int>& f, int v) {
    Int o = 0;
    for (const auto& [e, w] : g.incident(v)) {
        if (in_tree[e]) {
            o += (f[w] - f[v]) / len[e];
        } else {
            o += out_slope(f[v], f[w], len[e]);
        }
    }
    return o;
}

// BFS orientation of one spanning tree. Level k assigns the value of
// ord_vertex[k-1]; done_vertices[k] / done_edges[k] list the vertices and
// non-tree edges whose incident values are all fixed after level k, which is
// where their order and break contributions become final.
struct TreeShape {
    std::vector<int> ord_vertex;
    std::vector<int> ord_parent;
    std::vector<Int> ord_step;
    std::vector<std::vector<int>> done_vertices;
    std::vector<std::vector<int>> done_edges;
};

TreeShape shape_tree(const Graph& g, const std::vector<Int>& len, const std::vector<char>& in_tree,
                     int root) {
    const int n = g.vertex_count();
    TreeShape ts;
    std::vector<int> level(n, -1);
    level[root] = 0;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (const auto& [e, w] : g.incident(v)) {
            if (!in_tree[e] || level[w] >= 0) continue;
            level[w] = static_cast<int>(ts.ord_vertex.size()) + 1;
            ts.ord_vertex.push_back(w);
            ts.ord_parent.push_back(v);
            ts.ord_step.push_back(g.edge(e).v == w ? len[e] : -len[e]);
            bfs.push(w);
        }
    }
    ts.done_vertices.assign(n, {});
    ts.done_edges.assign(n, {});
    for (int v = 0; v < n; ++v) {
        int lv = level[v];
        for (const auto& [e, w] : g.incident(v)) {
            (void)e;
            lv = std::max(lv, level[w]);
        }
        ts.done_vertices[lv].push_back(v);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        ts.done_edges[std::max(level[g.edge(e).u], level[g.edge(e).v])].push_back(e);
    }
    return ts;
}

struct EnumState {
    EnumState(const EnumHost& host, const RankOptions& options) : H(host), opt(options) {}

    const EnumHost& H;
    const RankOptions& opt;
    Int p = 0;
    Int sweep = 0;
    std::optional<long long> term_cap;
    long long work_limit = 0;  // 0: unlimited

    long long terms = 0;
    long long work = 0;
    bool capped = false;
    bool floor_hit = false;  // a term reached -1; nothing can beat it

    bool have_best = false;
    Int best = 0;
    std::vector<int> best_tree;
    std::vector<Int> best_f;
    std::vector<Point> best_order;
};

// Terms for one candidate function: minimize over orderings of the base
// points, the support of d + div(f), and the break points. nu values follow
// from segment counts, so each ordering costs O(segments).
void evaluate_terms(EnumState& st, const std::vector<int>& tree, const std::vector<char>& in_tree,
                    const std::vector<Int>& f) {
    const Graph& g = st.H.host.graph;
    const int n = g.vertex_count();

    std::vector<Int> dp(n);
    Int lb = -1;
    for (int v = 0; v < n; ++v) {
        dp[v] = st.H.chips[v] + vertex_order(g, st.H.len, in_tree, f, v);
        lb += std::max<Int>(0, dp[v] - g.degree(v) + 1);
    }
    // nu_P(q) <= degree(q) - 1 for every ordering, so lb bounds every term
    // this candidate can produce.
    if (st.have_best && lb >= st.best) return;

    std::vector<Point> pts;
    std::vector<Int> vals;
    for (int v = 0; v < n; ++v) {
        if (st.H.in_base[v] || dp[v] != 0) {
            pts.push_back(Point::vertex(v));
            vals.push_back(dp[v]);
        }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        Int a = f[g.edge(e).u];
        Int b = f[g.edge(e).v];
        Int len = st.H.len[e];
        Int diff = a <= b ? b - a : a - b;
        Int rem = diff % len;
        if (rem == 0) continue;
        // break sits at distance rem from the higher end; offsets count from u
        pts.push_back(Point::interior(e, to_rational(a > b ? rem : len - rem)));
        vals.push_back(1);
    }

    const int q = static_cast<int>(pts.size());
    std::vector<int> by(q);
    std::iota(by.begin(), by.end(), 0);
    std::sort(by.begin(), by.end(), [&pts](int i, int j) { return pts[i] < pts[j]; });
    std::vector<Point> spts(q);
    std::vector<Int> svals(q);
    for (int i = 0; i < q; ++i) {
        spts[i] = pts[by[i]];
        svals[i] = vals[by[i]];
    }

    SegmentStructure cut = cut_segments(st.H.host, spts);
    if (static_cast<int>(cut.support.size()) != q) {
        throw invariant_violation("ordering support lost points in the cut");
    }
    std::vector<std::pair<int, int>> seg;
    for (const PSegment& s : cut.segments) {
        int ia = static_cast<int>(std::lower_bound(cut.support.begin(), cut.support.end(), s.end_a) -
                                  cut.support.begin());
        int ib = static_cast<int>(std::lower_bound(cut.support.begin(), cut.support.end(), s.end_b) -
                                  cut.support.begin());
        seg.emplace_back(ia, ib);
    }

    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> pos(q);
    std::vector<Int> cnt(q);
    do {
        if (st.term_cap && st.terms >= *st.term_cap) {
            st.capped = true;
            return;
        }
        ++st.terms;
        for (int j = 0; j < q; ++j) pos[order[j]] = j;
        std::fill(cnt.begin(), cnt.end(), 0);
        for (const auto& [ia, ib] : seg) ++cnt[pos[ia] > pos[ib] ? ia : ib];
        Int term = -1;
        for (int i = 0; i < q; ++i) term += std::max<Int>(0, svals[i] - cnt[i] + 1);
        if (st.opt.term_observer) st.opt.term_observer(term);
        if (!st.have_best || term < st.best) {
            st.have_best = true;
            st.best = term;
            st.best_tree = tree;
            st.best_f = f;
            st.best_order.clear();
            for (int j = 0; j < q; ++j) st.best_order.push_back(cut.support[order[j]]);
            if (term == -1) {
                st.floor_hit = true;
                return;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
}

// Depth-first sweep over slope assignments, one tree edge per level. partial
// carries deg_plus of the candidate's principal part restricted to settled
// vertices and break points; it only grows, so exceeding p prunes the branch
// without losing any admissible candidate (the optimum is attained by a
// function with deg_plus <= p, and such a function also has every slope <= p,
// which keeps the per-level sweep range sound).
void sweep_levels(EnumState& st, const TreeShape& ts, const std::vector<int>& tree,
                  const std::vector<char>& in_tree, std::vector<Int>& f, int k, Int partial) {
    const Graph& g = st.H.host.graph;
    const int n = g.vertex_count();
    if (k > n - 1) {
        evaluate_terms(st, tree, in_tree, f);
        return;
    }
    const int child = ts.ord_vertex[k - 1];
    const Int base = f[ts.ord_parent[k - 1]];
    const Int step = ts.ord_step[k - 1];
    for (Int t = -st.sweep; t <= st.sweep; ++t) {
        if (st.capped || st.floor_hit) return;
        if (st.work_limit && ++st.work > st.work_limit) {
            st.capped = true;
            return;
        }
        f[child] = base + t * step;
        Int part = partial;
        bool viable = true;
        for (int v : ts.done_vertices[k]) {
            part += std::max<Int>(0, vertex_order(g, st.H.len, in_tree, f, v));
            if (part > st.p) {
                viable = false;
                break;
            }
        }
        if (viable) {
            for (int e : ts.done_edges[k]) {
                Int diff = iabs(f[g.edge(e).u] - f[g.edge(e).v]);
                if (diff % st.H.len[e] != 0) ++part;
                if (part > st.p) {
                    viable = false;
                    break;
                }
            }
        }
        if (!viable) continue;
        sweep_levels(st, ts, tree, in_tree, f, k + 1, part);
    }
}

// Rebuilds the winning candidate on the search host and transports it back to
// the input host: values shrink by alpha so slopes survive the unscaling, and
// promoted vertices turn back into interior break samples.
RankCertificate build_certificate(const MetricGraph& g, const EnumHost& H, const EnumState& st) {
    const Graph& hg = H.host.graph;
    const int n = hg.vertex_count();
    std::vector<char> in_tree(hg.edge_count(), 0);
    for (int e : st.best_tree) in_tree[e] = 1;

    Rational scale = Rational(1) / Rational(H.alpha);

    Divisor d_prime;
    for (int v = 0; v < n; ++v) {
        Int dv = H.chips[v] + vertex_order(hg, H.len, in_tree, st.best_f, v);
        if (dv != 0) add_chip(d_prime, H.bwd(Point::vertex(v)), dv);
    }

    std::vector<Rational> values(g.graph.vertex_count());
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        Point hp = H.fwd(Point::vertex(v));
        values[v] = to_rational(st.best_f[hp.id]) * scale;
    }
    std::vector<std::vector<PLBreak>> samples(g.graph.edge_count());
    auto add_sample = [&](const Point& host_pt, const Rational& host_value) {
        Point back = H.bwd(host_pt);
        if (back.kind != Point::Kind::Interior) {
            throw invariant_violation("break transport left the edge interior");
        }
        samples[back.id].push_back(PLBreak{back.offset, host_value * scale});
    };
    for (int v = 0; v < n; ++v) {
        if (hg.auxiliary(v)) add_sample(Point::vertex(v), to_rational(st.best_f[v]));
    }
    for (int e = 0; e < hg.edge_count(); ++e) {
        if (in_tree[e]) continue;
        Int a = st.best_f[hg.edge(e).u];
        Int b = st.best_f[hg.edge(e).v];
        Int len = H.len[e];
        Int diff = a <= b ? b - a : a - b;
        Int s = diff / len;
        Int rem = diff % len;
        if (rem == 0) continue;
        Int off = a > b ? rem : len - rem;
        Int lo = a <= b ? a : b;
        add_chip(d_prime, H.bwd(Point::interior(e, to_rational(off))), 1);
        add_sample(Point::interior(e, to_rational(off)), to_rational(lo + s * (len - rem)));
    }

    Permutation perm;
    for (const Point& q : st.best_order) perm.order.push_back(H.bwd(q));

    RankCertificate cert;
    cert.d_prime = std::move(d_prime);
    cert.perm = std::move(perm);
    cert.f = make_pl(g, std::move(values), std::move(samples));
    return cert;
}

RankResult rank_enumeration(const MetricGraph& g, const Divisor& d,
                            const std::optional<EnumerationBudget>& budget,
                            const RankOptions& opt) {
    RankResult out;
    if (d.empty()) {
        out.rank = 0;
        if (opt.want_witness) out.witness_unreachable = metric_witness(g, d, 0);
        return out;
    }

    EnumHost H = build_enum_host(g, d);
    const Graph& hg = H.host.graph;
    const int n = hg.vertex_count();

    if (n == 1) {
        out.rank = std::max<Int>(H.chips[0], -1);
        if (opt.want_witness) out.witness_unreachable = metric_witness(g, d, out.rank);
        return out;
    }

    Int big_m = 1;
    for (Int c : H.chips) big_m = std::max(big_m, iabs(c));
    const Int p = 2 * (static_cast<Int>(n) * big_m + hg.edge_count());

    Integer bound = slope_bound(H.host, p);
    std::optional<long long> cap;
    if (budget) {
        if (budget->slope_bound < 1) throw validation_error("slope bound must be at least 1");
        bound = budget->slope_bound;
        cap = budget->term_cap;
        if (cap && *cap < 1) throw validation_error("term cap must be positive");
    }
    // Slopes above p never help: see the EnumerationBudget note.
    const bool covered = bound >= to_integer(p);
    const Int sweep = covered ? p : to_int_checked(bound, "slope bound");

    Integer total_len = 0;
    for (Int len : H.len) total_len += to_integer(len);
    if (to_integer(sweep) * total_len > (Integer(1) << 55)) {
        throw invariant_violation("enumeration budget exceeds 64-bit range");
    }

    EnumState st{H, opt};
    st.p = p;
    st.sweep = sweep;
    st.term_cap = cap;
    st.work_limit = cap ? 20 * *cap : 0;

    std::vector<std::vector<int>> trees = spanning_trees(hg);

    {
        // Zero-slope candidate on the first tree: seeds the minimum so every
        // later prune compares against a genuine term.
        std::vector<char> in_tree(hg.edge_count(), 0);
        for (int e : trees.front()) in_tree[e] = 1;
        std::vector<Int> f(n, 0);
        evaluate_terms(st, trees.front(), in_tree, f);
    }
    for (const auto& tree : trees) {
        if (st.capped || st.floor_hit) break;
        std::vector<char> in_tree(hg.edge_count(), 0);
        for (int e : tree) in_tree[e] = 1;
        TreeShape ts = shape_tree(hg, H.len, in_tree, 0);
        std::vector<Int> f(n, 0);
        sweep_levels(st, ts, tree, in_tree, f, 1, 0);
    }
    if (!st.have_best) throw invariant_violation("enumeration produced no terms");

    out.rank = st.best;
    out.exact = covered && !st.capped;
    out.certificate = build_certificate(g, H, st);
    if (opt.want_witness) out.witness_unreachable = metric_witness(g, d, out.rank);
    return out;
}

} // namespace

Integer slope_bound(const MetricGraph& g, Int p) {
    if (p < 0) throw validation_error("slope budget parameter must be nonnegative");
    Int delta = 0;
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        delta = std::max(delta, static_cast<Int>(g.graph.degree(v)));
    }
    Integer base = to_integer(delta + p);
    Integer out = 1;
    for (int e = 0; e < g.graph.edge_count(); ++e) out *= base;
    return out;
}

EnumerationBudget default_enumeration_budget(const MetricGraph& g, const Divisor& d) {
    EnumHost H = build_enum_host(g, d);
    Int big_m = 1;
    for (Int c : H.chips) big_m = std::max(big_m, iabs(c));
    const Int n = H.host.graph.vertex_count();
    EnumerationBudget b;
    b.p = 2 * (n * big_m + H.host.graph.edge_count());
    b.slope_bound = slope_bound(H.host, b.p);
    b.exact = true;
    return b;
}

std::vector<std::vector<int>> spanning_trees(const Graph& g) {
    g.require_connected();
    if (g.has_self_edge()) {
        throw validation_error("spanning tree enumeration requires a loopless graph");
    }
    const int n = g.vertex_count();
    const int m = g.edge_count();
    std::vector<std::vector<int>> out;
    if (n == 1) {
        out.push_back({});
        return out;
    }
    const int k = n - 1;
    Integer combos = 1;
    for (int i = 0; i < k; ++i) {
        combos *= m - i;
        combos /= i + 1;
    }
    if (combos > 2000000) {
        throw invariant_violation("spanning tree enumeration exceeds the safety limit");
    }
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Dsu dsu(n);
        bool acyclic = true;
        for (int e : pick) {
            if (!dsu.unite(g.edge(e).u, g.edge(e).v)) {
                acyclic = false;
                break;
            }
        }
        if (acyclic) out.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == m - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

Integer spanning_tree_count(const Graph& g) {
    g.require_connected();
    const int n = g.vertex_count();
    if (n == 1) return 1;
    if (n > 64) throw invariant_violation("tree counting limited to 64 vertices");
    const int dim = n - 1;
    std::vector<std::vector<Integer>> a(dim, std::vector<Integer>(dim, Integer(0)));
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edge(e).u;
        int v = g.edge(e).v;
        if (u == v) continue;
        if (u > 0) a[u - 1][u - 1] += 1;
        if (v > 0) a[v - 1][v - 1] += 1;
        if (u > 0 && v > 0) {
            a[u - 1][v - 1] -= 1;
            a[v - 1][u - 1] -= 1;
        }
    }
    // Bareiss fraction-free elimination; divisions are exact.
    Integer prev = 1;
    int sign = 1;
    for (int c = 0; c + 1 < dim; ++c) {
        if (a[c][c] == 0) {
            int swap_row = -1;
            for (int r = c + 1; r < dim; ++r) {
                if (a[r][c] != 0) {
                    swap_row = r;
                    break;
                }
            }
            if (swap_row < 0) return 0;
            std::swap(a[c], a[swap_row]);
            sign = -sign;
        }
        for (int r = c + 1; r < dim; ++r) {
            for (int cc = c + 1; cc < dim; ++cc) {
                a[r][cc] = (a[r][cc] * a[c][c] - a[r][c] * a[c][cc]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    Integer det = a[dim - 1][dim - 1];
    return sign > 0 ? det : -det;
}

PLFunction extend_tree_function(const MetricGraph& g, const std::vector<int>& tree,
                                const std::map<int, Int>& slope, int root) {
    g.validate();
    g.graph.require_connected();
    const int n = g.graph.vertex_count();
    const int m = g.graph.edge_count();
    if (root < 0 || root >= n) throw validation_error("unknown vertex");
    if (static_cast<int>(tree.size()) != n - 1) {
        throw validation_error("tree edges do not form a spanning tree");
    }
    std::vector<char> in_tree(m, 0);
    Dsu dsu(n);
    for (int e : tree) {
        if (e < 0 || e >= m || in_tree[e] || !dsu.unite(g.graph.edge(e).u, g.graph.edge(e).v)) {
            throw validation_error("tree edges do not form a spanning tree");
        }
        in_tree[e] = 1;
    }
    for (const auto& [e, s] : slope) {
        (void)s;
        if (e < 0 || e >= m || !in_tree[e]) {
            throw validation_error("slope assigned to a non-tree edge");
        }
    }

    std::vector<Rational> values(n, Rational(0));
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (const auto& [e, w] : g.graph.incident(v)) {
            if (!in_tree[e] || seen[w]) continue;
            auto it = slope.find(e);
            if (it == slope.end()) throw validation_error("missing slope for a tree edge");
            Rational step = to_rational(it->second) * g.edge_length(e);
            if (g.graph.edge(e).v == w) {
                values[w] = values[v] + step;
            } else {
                values[w] = values[v] - step;
            }
            seen[w] = 1;
            bfs.push(w);
        }
    }

    std::vector<std::vector<PLBreak>> samples(m);
    for (int e = 0; e < m; ++e) {
        if (in_tree[e]) continue;
        const Rational& len = g.edge_length(e);
        const Rational& a = values[g.graph.edge(e).u];
        const Rational& b = values[g.graph.edge(e).v];
        Rational diff = b >= a ? b - a : a - b;
        Integer s = rational_floor_div(diff, len);
        Rational rem = diff - Rational(s) * len;
        if (rem == 0) continue;
        Rational off = a > b ? rem : len - rem;  // distance rem from the higher end
        Rational lo = a <= b ? a : b;
        samples[e].push_back(PLBreak{off, lo + Rational(s) * (len - rem)});
    }
    return make_pl(g, std::move(values), std::move(samples));
}

RankResult rank_graph(const Graph& g, const Divisor& d, const RankOptions& opt) {
    g.require_connected();
    validate_vertex_supported(g, d);
    RankResult out;
    const Int dg = degree(d);
    if (dg < 0) {
        out.rank = -1;
        return out;
    }
    GraphRanker ranker(g, canonical_base_vertex(g));
    std::vector<Int> chips = chip_vector(g, d);

    bool computed = false;
    if (opt.high_degree_shortcut) {
        // Self-edges never move chips, so the relevant cycle count excludes
        // them.
        Int loops = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).u == g.edge(e).v) ++loops;
        }
        Int gl = g.edge_count() - loops - g.vertex_count() + 1;
        if (dg > 2 * gl - 2) {
            out.rank = dg - gl;
            computed = true;
        }
    }
    if (!computed) out.rank = ranker.rank_of(chips);

    if (opt.want_witness) {
        auto e = first_failing(ranker, g, chips, out.rank + 1);
        if (!e) throw invariant_violation("no unreachable witness at rank + 1");
        out.witness_unreachable = *e;
    }
    if (opt.exhaustive_verify) {
        for (Int k = 0; k <= out.rank; ++k) {
            if (first_failing(ranker, g, chips, k)) {
                throw invariant_violation("an effective divisor below the rank is unreachable");
            }
        }
    }
    return out;
}

RankResult rank_metric(const MetricGraph& g, const Divisor& d, RankMethod method,
                       const std::optional<EnumerationBudget>& budget, const RankOptions& opt) {
    g.validate();
    validate_on_host(g, d);
    if (degree(d) < 0) {
        RankResult out;
        out.rank = -1;
        return out;
    }
    if (method == RankMethod::Enumeration) return rank_enumeration(g, d, budget, opt);
    return rank_subdivision(g, d, opt);
}

RankResult rank_tropical(const TropicalCurve& c, const Divisor& d, RankMethod method,
                         const std::optional<EnumerationBudget>& budget, const RankOptions& opt) {
    c.validate();
    validate_on_curve(c, d);
    return rank_metric(c.metric, retract_divisor(c, d), method, budget, opt);
}

Int riemann_roch_residual(const MetricGraph& g, const Divisor& d) {
    RankOptions opt;
    opt.want_witness = false;
    Divisor kd = combine(1, canonical_divisor(g), -1, d);
    Int r1 = rank_metric(g, d, RankMethod::Auto, std::nullopt, opt).rank;
    Int r2 = rank_metric(g, kd, RankMethod::Auto, std::nullopt, opt).rank;
    return r1 - r2 - degree(d) - 1 + genus(g);
}

Int riemann_roch_residual_curve(const TropicalCurve& c, const Divisor& d) {
    RankOptions opt;
    opt.want_witness = false;
    Divisor kd = combine(1, canonical_divisor_curve(c), -1, d);
    Int r1 = rank_tropical(c, d, RankMethod::Auto, std::nullopt, opt).rank;
    Int r2 = rank_tropical(c, kd, RankMethod::Auto, std::nullopt, opt).rank;
    return r1 - r2 - degree(d) - 1 + genus(c);
}

RRConditionsReport check_rr_conditions(const MetricGraph& g, const Divisor& d, bool require_rr2) {
    g.validate();
    validate_on_host(g, d);
    RRConditionsReport report;
    const int e_d = epsilon(g, d);
    NonspecialWitness nw = nonspecial_witness(g, d);
    if ((e_d == 0) != nw.rank_nonnegative) {
        throw invariant_violation("emptiness test disagrees with the witness construction");
    }
    report.rr1_effective = e_d == 0;
    if (nw.witness) {
        Divisor nu = nu_divisor(g, *nw.witness);
        report.rr1_witness_ok = epsilon(g, combine(1, nu, -1, d)) == 0;
    }
    report.rr1_ok = report.rr1_effective != report.rr1_witness_ok;

    if (degree(d) == genus(g) - 1) {
        Divisor kd = combine(1, canonical_divisor(g), -1, d);
        report.rr2_ok = e_d == epsilon(g, kd);
    } else if (require_rr2) {
        throw validation_error("degree must be genus minus one for the pairing condition");
    }
    return report;
}

} // namespace tropdiv
