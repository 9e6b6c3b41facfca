// SPDX-License-Identifier: MIT
//
// The .tg document format, its canonical serializer, and the command line
// driver. The format is line oriented:
//
//   metricgraph NAME        followed by vertex/edge lines
//   vertex ID
//   edge ID U V LENGTH      LENGTH is an integer, p/q, or "inf" (then V
//                           names the fresh unbounded end of a ray at U)
//   divisor NAME on GRAPH   followed by chip lines
//   chip POINT COUNT
//   perm NAME on GRAPH: POINT POINT ...
//
// POINT is a vertex or end name, or EDGE@OFFSET with the offset measured
// from the edge's declared first endpoint. '#' starts a comment.

#include "tropdiv/io.hpp"

#include "tropdiv/plfunc.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/rational.hpp"
#include "tropdiv/reduction.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace tropdiv {
namespace {

using Json = nlohmann::ordered_json;

struct Tok {
    std::string text;
    int col = 0; // 1-based
};

std::vector<Tok> tokenize(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<Tok> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back(Tok{line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == '@' || c == ':' || c == '#') return false;
    }
    return true;
}

std::optional<Int> parse_count(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

[[noreturn]] void fail(int line, int col, const std::string& message) {
    throw tg_parse_error(line, col, message);
}

// A host under construction; closed (validated and moved into the document)
// by the next top-level declaration or end of input.
struct HostBuild {
    bool open = false;
    std::string name;
    int line = 0;
    int col = 0;
    TropicalCurve curve;
};

void close_host(Document& doc, HostBuild& hb) {
    if (!hb.open) return;
    try {
        if (hb.curve.metric.graph.vertex_count() == 0) throw validation_error("empty graph");
        hb.curve.validate();
    } catch (const validation_error& e) {
        fail(hb.line, hb.col, e.what());
    }
    doc.hosts.emplace_back(hb.name, std::move(hb.curve));
    hb = HostBuild{};
}

const TropicalCurve* find_host(const Document& doc, const std::string& name) {
    for (const auto& [n, c] : doc.hosts) {
        if (n == name) return &c;
    }
    return nullptr;
}

std::string point_text(const TropicalCurve& c, const Point& p) { return curve_point_str(c, p); }

} // namespace

const TropicalCurve& Document::host(const std::string& name) const {
    const TropicalCurve* c = find_host(*this, name);
    if (!c) throw validation_error("unknown host '" + name + "'");
    return *c;
}

const NamedDivisor& Document::divisor(const std::string& name) const {
    for (const auto& nd : divisors) {
        if (nd.name == name) return nd;
    }
    throw validation_error("unknown divisor '" + name + "'");
}

const NamedPerm& Document::perm(const std::string& name) const {
    for (const auto& np : perms) {
        if (np.name == name) return np;
    }
    throw validation_error("unknown permutation '" + name + "'");
}

Point parse_point(const TropicalCurve& host, const std::string& token) {
    auto at = token.find('@');
    if (at == std::string::npos) {
        int v = host.metric.graph.find_vertex(token);
        if (v >= 0) return Point::vertex(v);
        int end = host.find_end(token);
        if (end >= 0) return Point::unbounded_end(end);
        throw validation_error("unknown point '" + token + "'");
    }
    std::string ename = token.substr(0, at);
    auto off = parse_rational(token.substr(at + 1));
    if (!off) throw validation_error("malformed offset in '" + token + "'");
    int e = host.metric.graph.find_edge(ename);
    if (e >= 0) {
        if (*off <= 0 || *off >= host.metric.edge_length(e)) {
            throw validation_error("offset out of range");
        }
        return Point::interior(e, *off);
    }
    int r = host.find_infinite_edge(ename);
    if (r >= 0) {
        if (*off <= 0) throw validation_error("offset out of range");
        return Point::inf_interior(r, *off);
    }
    throw validation_error("unknown edge '" + ename + "'");
}

Document parse_document(const std::string& text) {
    Document doc;
    HostBuild hb;
    int cur_div = -1; // index into doc.divisors while a chip block is open

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::vector<Tok> t = tokenize(raw);
        if (t.empty()) continue;
        const std::string& kw = t[0].text;
        int endcol = static_cast<int>(raw.size()) + 1;

        if (kw == "metricgraph") {
            cur_div = -1;
            close_host(doc, hb);
            if (t.size() != 2) fail(lineno, endcol, "expected: metricgraph NAME");
            if (!valid_name(t[1].text)) fail(lineno, t[1].col, "invalid name '" + t[1].text + "'");
            if (find_host(doc, t[1].text)) fail(lineno, t[1].col, "duplicate id '" + t[1].text + "'");
            hb.open = true;
            hb.name = t[1].text;
            hb.line = lineno;
            hb.col = t[0].col;
        } else if (kw == "vertex") {
            cur_div = -1;
            if (!hb.open) fail(lineno, t[0].col, "no host declared");
            if (t.size() != 2) fail(lineno, endcol, "expected: vertex ID");
            if (!valid_name(t[1].text)) fail(lineno, t[1].col, "invalid name '" + t[1].text + "'");
            if (hb.curve.metric.graph.find_vertex(t[1].text) >= 0 || hb.curve.find_end(t[1].text) >= 0) {
                fail(lineno, t[1].col, "duplicate id '" + t[1].text + "'");
            }
            hb.curve.metric.graph.add_vertex(t[1].text);
        } else if (kw == "edge") {
            cur_div = -1;
            if (!hb.open) fail(lineno, t[0].col, "no host declared");
            if (t.size() != 5) fail(lineno, endcol, "expected: edge ID U V LENGTH");
            const std::string& id = t[1].text;
            if (!valid_name(id)) fail(lineno, t[1].col, "invalid name '" + id + "'");
            if (hb.curve.metric.graph.find_edge(id) >= 0 || hb.curve.find_infinite_edge(id) >= 0) {
                fail(lineno, t[1].col, "duplicate id '" + id + "'");
            }
            int u = hb.curve.metric.graph.find_vertex(t[2].text);
            if (u < 0) fail(lineno, t[2].col, "unknown vertex '" + t[2].text + "'");
            if (t[4].text == "inf") {
                const std::string& endname = t[3].text;
                if (!valid_name(endname)) fail(lineno, t[3].col, "invalid name '" + endname + "'");
                if (hb.curve.metric.graph.find_vertex(endname) >= 0 || hb.curve.find_end(endname) >= 0) {
                    fail(lineno, t[3].col, "duplicate id '" + endname + "'");
                }
                hb.curve.infinite_edges.push_back(InfiniteEdge{id, u, endname});
            } else {
                int v = hb.curve.metric.graph.find_vertex(t[3].text);
                if (v < 0) fail(lineno, t[3].col, "unknown vertex '" + t[3].text + "'");
                auto len = parse_rational(t[4].text);
                if (!len) fail(lineno, t[4].col, "non-rational length '" + t[4].text + "'");
                if (*len <= 0) fail(lineno, t[4].col, "length must be positive");
                hb.curve.metric.graph.add_edge(id, u, v);
                hb.curve.metric.length.push_back(*len);
            }
        } else if (kw == "divisor") {
            cur_div = -1;
            close_host(doc, hb);
            if (t.size() != 4 || t[2].text != "on") fail(lineno, endcol, "expected: divisor NAME on HOST");
            if (!valid_name(t[1].text)) fail(lineno, t[1].col, "invalid name '" + t[1].text + "'");
            for (const auto& nd : doc.divisors) {
                if (nd.name == t[1].text) fail(lineno, t[1].col, "duplicate id '" + t[1].text + "'");
            }
            if (!find_host(doc, t[3].text)) fail(lineno, t[3].col, "unknown host '" + t[3].text + "'");
            doc.divisors.push_back(NamedDivisor{t[1].text, t[3].text, {}});
            cur_div = static_cast<int>(doc.divisors.size()) - 1;
        } else if (kw == "chip") {
            if (cur_div < 0) fail(lineno, t[0].col, "no divisor declared");
            if (t.size() != 3) fail(lineno, endcol, "expected: chip POINT COUNT");
            const TropicalCurve& host = *find_host(doc, doc.divisors[cur_div].host);
            Point p;
            try {
                p = parse_point(host, t[1].text);
            } catch (const validation_error& e) {
                fail(lineno, t[1].col, e.what());
            }
            auto count = parse_count(t[2].text);
            if (!count) fail(lineno, t[2].col, "malformed chip count '" + t[2].text + "'");
            add_chip(doc.divisors[cur_div].d, p, *count);
        } else if (kw == "perm") {
            cur_div = -1;
            close_host(doc, hb);
            if (t.size() < 4 || t[2].text != "on") {
                fail(lineno, endcol, "expected: perm NAME on HOST: POINT ...");
            }
            if (!valid_name(t[1].text)) fail(lineno, t[1].col, "invalid name '" + t[1].text + "'");
            for (const auto& np : doc.perms) {
                if (np.name == t[1].text) fail(lineno, t[1].col, "duplicate id '" + t[1].text + "'");
            }
            std::string hostname = t[3].text;
            size_t first_point = 4;
            if (!hostname.empty() && hostname.back() == ':') {
                hostname.pop_back();
            } else if (t.size() > 4 && t[4].text == ":") {
                first_point = 5;
            } else {
                fail(lineno, t[3].col, "expected ':' after the host name");
            }
            if (hostname.empty()) fail(lineno, t[3].col, "expected host name");
            const TropicalCurve* host = find_host(doc, hostname);
            if (!host) fail(lineno, t[3].col, "unknown host '" + hostname + "'");
            if (t.size() <= first_point) fail(lineno, endcol, "empty permutation");
            NamedPerm np;
            np.name = t[1].text;
            np.host = hostname;
            std::set<Point> seen;
            for (size_t i = first_point; i < t.size(); ++i) {
                Point p;
                try {
                    p = parse_point(*host, t[i].text);
                } catch (const validation_error& e) {
                    fail(lineno, t[i].col, e.what());
                }
                if (!seen.insert(p).second) {
                    fail(lineno, t[i].col, "duplicate point in permutation");
                }
                np.perm.order.push_back(p);
            }
            doc.perms.push_back(std::move(np));
        } else {
            fail(lineno, t[0].col, "unknown directive '" + kw + "'");
        }
    }
    close_host(doc, hb);
    return doc;
}

std::string serialize_document(const Document& doc) {
    std::ostringstream out;
    for (const auto& [name, c] : doc.hosts) {
        out << "metricgraph " << name << "\n";
        const Graph& g = c.metric.graph;
        for (int v = 0; v < g.vertex_count(); ++v) {
            out << "vertex " << g.vertex_name(v) << "\n";
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            out << "edge " << ed.name << " " << g.vertex_name(ed.u) << " " << g.vertex_name(ed.v)
                << " " << rational_str(c.metric.edge_length(e)) << "\n";
        }
        for (const auto& r : c.infinite_edges) {
            out << "edge " << r.name << " " << g.vertex_name(r.attachment) << " " << r.end_name
                << " inf\n";
        }
    }
    for (const auto& nd : doc.divisors) {
        const TropicalCurve& host = doc.host(nd.host);
        out << "divisor " << nd.name << " on " << nd.host << "\n";
        for (const auto& [p, count] : nd.d) {
            out << "chip " << point_text(host, p) << " " << count << "\n";
        }
    }
    for (const auto& np : doc.perms) {
        const TropicalCurve& host = doc.host(np.host);
        out << "perm " << np.name << " on " << np.host << ":";
        for (const Point& p : np.perm.order) out << " " << point_text(host, p);
        out << "\n";
    }
    return out.str();
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json divisor_json(const TropicalCurve& c, const Divisor& d) {
    Json arr = Json::array();
    for (const auto& [p, count] : d) {
        arr.push_back(Json{{"point", point_text(c, p)}, {"chips", count}});
    }
    return arr;
}

Json pl_json(const MetricGraph& g, const PLFunction& f) {
    Json values = Json::object();
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
        values[g.graph.vertex_name(v)] = rational_str(f.vertex_value[v]);
    }
    Json breaks = Json::object();
    for (int e = 0; e < g.graph.edge_count(); ++e) {
        if (f.edge_breaks[e].empty()) continue;
        Json arr = Json::array();
        for (const PLBreak& b : f.edge_breaks[e]) {
            arr.push_back(Json{{"offset", rational_str(b.offset)}, {"value", rational_str(b.value)}});
        }
        breaks[g.graph.edge(e).name] = arr;
    }
    return Json{{"values", values}, {"breaks", breaks}};
}

Json perm_json(const TropicalCurve& c, const Permutation& p) {
    Json arr = Json::array();
    for (const Point& q : p.order) arr.push_back(point_text(c, q));
    return arr;
}

// The metric part of a host, rejecting curves with rays. Reduction,
// equivalence, and the permutation divisors are defined on finite hosts;
// rank and the residual retract curve divisors themselves.
const MetricGraph& finite_host(const TropicalCurve& c, const char* op) {
    if (!c.is_metric()) {
        throw validation_error(std::string(op) + " needs a metric graph host (no rays)");
    }
    return c.metric;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_info(const Document& doc, bool json, std::ostream& out) {
    Json hosts = Json::array();
    for (const auto& [name, c] : doc.hosts) {
        Int g = genus(c);
        std::string canon;
        Divisor k;
        if (c.is_metric()) {
            k = canonical_divisor(c.metric);
            canon = divisor_str(c.metric, k);
        } else {
            k = canonical_divisor_curve(c);
            canon = curve_divisor_str(c, k);
        }
        if (json) {
            Json h;
            h["name"] = name;
            h["genus"] = g;
            h["vertices"] = c.metric.graph.vertex_count();
            h["edges"] = c.metric.graph.edge_count();
            h["rays"] = static_cast<int>(c.infinite_edges.size());
            h["canonical"] = divisor_json(c, k);
            hosts.push_back(std::move(h));
        } else {
            out << "host " << name << "\n";
            out << "genus " << g << "\n";
            out << "vertices " << c.metric.graph.vertex_count() << "\n";
            out << "edges " << c.metric.graph.edge_count() << "\n";
            if (!c.infinite_edges.empty()) out << "rays " << c.infinite_edges.size() << "\n";
            out << "canonical " << canon << "\n";
        }
    }
    if (json) emit(out, Json{{"format", 1}, {"hosts", std::move(hosts)}});
    return 0;
}

int cmd_reduce(const Document& doc, const std::string& divisor_name, const std::string& base_token,
               bool json, std::ostream& out) {
    const NamedDivisor& nd = doc.divisor(divisor_name);
    const TropicalCurve& c = doc.host(nd.host);
    const MetricGraph& g = finite_host(c, "reduce");
    Point base = parse_point(c, base_token);
    MetricReduction red = reduce_metric(g, nd.d, base);
    if (json) {
        Json j;
        j["format"] = 1;
        j["divisor"] = nd.name;
        j["base"] = point_text(c, base);
        j["reduced"] = divisor_json(c, red.reduced);
        j["certificate"] = pl_json(g, red.certificate);
        emit(out, j);
    } else {
        out << "reduced " << divisor_str(g, red.reduced) << "\n";
    }
    return 0;
}

int cmd_rank(const Document& doc, const std::string& divisor_name, const std::string& method_name,
             const std::string& slope_bound_text, long long term_cap, bool json, std::ostream& out) {
    const NamedDivisor& nd = doc.divisor(divisor_name);
    const TropicalCurve& c = doc.host(nd.host);

    RankMethod method = RankMethod::Auto;
    if (method_name == "subdivision") method = RankMethod::Subdivision;
    else if (method_name == "enumeration") method = RankMethod::Enumeration;
    else if (method_name != "auto") throw validation_error("unknown rank method '" + method_name + "'");

    std::optional<EnumerationBudget> budget;
    if (!slope_bound_text.empty() || term_cap > 0) {
        if (method != RankMethod::Enumeration) {
            throw validation_error("slope search options apply to the enumeration method");
        }
        Divisor metric_d = c.is_metric() ? nd.d : retract_divisor(c, nd.d);
        EnumerationBudget b = default_enumeration_budget(c.metric, metric_d);
        if (!slope_bound_text.empty()) {
            auto u = parse_rational(slope_bound_text);
            if (!u || !rational_is_integer(*u)) {
                throw validation_error("malformed slope bound '" + slope_bound_text + "'");
            }
            Integer bound = u->get_num();
            if (bound < 1) throw validation_error("slope bound must be at least 1");
            b.exact = (bound == b.slope_bound);
            b.slope_bound = bound;
        }
        if (term_cap > 0) b.term_cap = term_cap;
        budget = b;
    }

    RankResult r = c.is_metric() ? rank_metric(c.metric, nd.d, method, budget)
                                 : rank_tropical(c, nd.d, method, budget);

    if (json) {
        Json j;
        j["format"] = 1;
        j["divisor"] = nd.name;
        j["method"] = method_name;
        j["rank"] = r.rank;
        j["exact"] = r.exact;
        j["witness"] = divisor_json(c, r.witness_unreachable);
        if (r.certificate) {
            Json cert;
            cert["d_prime"] = divisor_json(c, r.certificate->d_prime);
            cert["perm"] = perm_json(c, r.certificate->perm);
            cert["f"] = pl_json(c.metric, r.certificate->f);
            j["certificate"] = std::move(cert);
        }
        emit(out, j);
    } else {
        out << "rank " << r.rank << "\n";
        if (!r.exact) out << "inexact\n";
    }
    return 0;
}

int cmd_equiv(const Document& doc, const std::string& d1, const std::string& d2, bool json,
              std::ostream& out) {
    const NamedDivisor& a = doc.divisor(d1);
    const NamedDivisor& b = doc.divisor(d2);
    if (a.host != b.host) throw validation_error("divisors live on different hosts");
    const MetricGraph& g = finite_host(doc.host(a.host), "equiv");
    EquivalenceResult res = equivalent(g, a.d, b.d);
    if (json) {
        Json j;
        j["format"] = 1;
        j["equivalent"] = res.equivalent;
        if (res.witness) j["witness"] = pl_json(g, *res.witness);
        emit(out, j);
    } else {
        out << (res.equivalent ? "equivalent" : "not equivalent") << "\n";
    }
    return 0;
}

int cmd_nu(const Document& doc, const std::string& perm_name, bool json, std::ostream& out) {
    const NamedPerm& np = doc.perm(perm_name);
    const TropicalCurve& c = doc.host(np.host);
    const MetricGraph& g = finite_host(c, "nu");
    validate_permutation(g, np.perm);
    Divisor nu = nu_divisor(g, np.perm);
    if (json) {
        Json j;
        j["format"] = 1;
        j["perm"] = np.name;
        j["nu"] = divisor_json(c, nu);
        j["degree"] = degree(nu);
        emit(out, j);
    } else {
        out << "nu " << divisor_str(g, nu) << "\n";
    }
    return 0;
}

int cmd_rrcheck(const Document& doc, bool json, std::ostream& out) {
    Json results = Json::array();
    bool ok = true;
    for (const auto& nd : doc.divisors) {
        const TropicalCurve& c = doc.host(nd.host);
        Int residual = c.is_metric() ? riemann_roch_residual(c.metric, nd.d)
                                     : riemann_roch_residual_curve(c, nd.d);
        if (residual != 0) ok = false;
        if (json) {
            results.push_back(Json{{"divisor", nd.name}, {"residual", residual}});
        } else {
            out << nd.name << " residual " << residual << "\n";
        }
    }
    if (json) {
        emit(out, Json{{"format", 1}, {"results", std::move(results)}, {"ok", ok}});
    } else {
        out << (ok ? "rrcheck ok" : "rrcheck FAILED") << "\n";
    }
    return ok ? 0 : 2;
}

// A small fixed battery over hosts built in memory; exercises the pipeline
// without touching the filesystem.
int cmd_selftest(bool json, std::ostream& out) {
    struct Check {
        const char* name;
        bool ok;
    };
    std::vector<Check> checks;
    auto record = [&](const char* name, bool ok) { checks.push_back(Check{name, ok}); };

    TropicalCurve banana;
    {
        Graph& g = banana.metric.graph;
        int v0 = g.add_vertex("v0");
        int v1 = g.add_vertex("v1");
        g.add_edge("a", v0, v1);
        g.add_edge("b", v0, v1);
        g.add_edge("c", v0, v1);
        banana.metric.length = {Rational(1), Rational(1), Rational(1)};
    }
    const MetricGraph& bg = banana.metric;

    record("genus", genus(bg) == 2);

    Divisor k = canonical_divisor(bg);
    record("canonical", chips_at(k, Point::vertex(0)) == 1 && chips_at(k, Point::vertex(1)) == 1 &&
                            degree(k) == 2);

    Divisor three;
    add_chip(three, Point::vertex(1), 3);
    RankResult sub = rank_metric(bg, three, RankMethod::Subdivision);
    RankResult enu = rank_metric(bg, three, RankMethod::Enumeration);
    record("rank-agreement", sub.rank == enu.rank && sub.rank == 1 && enu.exact);
    record("residual", riemann_roch_residual(bg, three) == 0 && riemann_roch_residual(bg, k) == 0);

    {
        Graph path;
        int v0 = path.add_vertex("v0");
        path.add_edge("e", v0, path.add_vertex("v1"));
        Divisor d;
        add_chip(d, Point::vertex(0), 2);
        record("tree-rank", rank_graph(path, d).rank == 2);
    }

    {
        Graph c3;
        int v0 = c3.add_vertex("v0");
        int v1 = c3.add_vertex("v1");
        int v2 = c3.add_vertex("v2");
        c3.add_edge("e1", v0, v1);
        c3.add_edge("e2", v1, v2);
        c3.add_edge("e3", v2, v0);
        record("spanning-trees", spanning_trees(c3).size() == 3 && spanning_tree_count(c3) == 3);
        Divisor d;
        add_chip(d, Point::vertex(0), 1);
        record("cycle-rank", rank_graph(c3, d).rank == 0);
    }

    {
        Permutation p;
        p.order = {Point::vertex(0), Point::vertex(1)};
        Divisor nu = nu_divisor(bg, p);
        record("nu-degree", degree(nu) == genus(bg) - 1 && chips_at(nu, Point::vertex(1)) == 2);
        RRConditionsReport rep = check_rr_conditions(bg, nu, true);
        record("rr-conditions", rep.rr1_ok && rep.rr2_ok && *rep.rr2_ok);
    }

    {
        Document doc;
        doc.hosts.emplace_back("banana", banana);
        doc.divisors.push_back(NamedDivisor{"D", "banana", three});
        std::string text = serialize_document(doc);
        Document back = parse_document(text);
        record("round-trip", serialize_document(back) == text && back.divisor("D").d == three);
    }

    bool all = true;
    Json results = Json::array();
    for (const Check& c : checks) {
        all = all && c.ok;
        if (json) {
            results.push_back(Json{{"check", c.name}, {"ok", c.ok}});
        } else if (!c.ok) {
            out << "FAIL " << c.name << "\n";
        }
    }
    if (json) {
        emit(out, Json{{"format", 1}, {"results", std::move(results)}, {"ok", all}});
    } else {
        out << (all ? "selftest ok" : "selftest FAILED") << "\n";
    }
    return all ? 0 : 2;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact divisor ranks on graphs, metric graphs, and tropical curves"};
    app.name("tropdiv");
    bool json = false;
    app.add_flag("--json", json, "emit structured JSON on stdout");
    app.require_subcommand(1);

    std::string file, divisor_name, divisor2_name, base_token, perm_name;
    std::string method_name = "auto";
    std::string slope_bound_text;
    long long term_cap = 0;

    CLI::App* info = app.add_subcommand("info", "host summary: genus, sizes, canonical divisor");
    info->add_option("file", file, ".tg document")->required();

    CLI::App* reduce = app.add_subcommand("reduce", "reduced form of a divisor at a base point");
    reduce->add_option("file", file, ".tg document")->required();
    reduce->add_option("divisor", divisor_name, "divisor name")->required();
    reduce->add_option("--base", base_token, "base point")->required();

    CLI::App* rank = app.add_subcommand("rank", "rank of a divisor");
    rank->add_option("file", file, ".tg document")->required();
    rank->add_option("divisor", divisor_name, "divisor name")->required();
    rank->add_option("--method", method_name, "auto, subdivision, or enumeration")
        ->check(CLI::IsMember({"auto", "subdivision", "enumeration"}));
    rank->add_option("--slope-bound", slope_bound_text,
                     "cap tree slopes for the enumeration (may truncate the search)");
    rank->add_option("--term-cap", term_cap, "stop the enumeration after this many terms");

    CLI::App* equiv = app.add_subcommand("equiv", "linear equivalence of two divisors");
    equiv->add_option("file", file, ".tg document")->required();
    equiv->add_option("d1", divisor_name, "first divisor")->required();
    equiv->add_option("d2", divisor2_name, "second divisor")->required();

    CLI::App* nu = app.add_subcommand("nu", "divisor of a permutation");
    nu->add_option("file", file, ".tg document")->required();
    nu->add_option("--perm", perm_name, "permutation name")->required();

    CLI::App* rrcheck = app.add_subcommand("rrcheck", "verify the rank pairing for every divisor");
    rrcheck->add_option("file", file, ".tg document")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in checks");

    std::vector<const char*> argv;
    argv.push_back("tropdiv");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (selftest->parsed()) return cmd_selftest(json, out);
        Document doc = parse_document(read_file(file));
        if (info->parsed()) return cmd_info(doc, json, out);
        if (reduce->parsed()) return cmd_reduce(doc, divisor_name, base_token, json, out);
        if (rank->parsed()) {
            return cmd_rank(doc, divisor_name, method_name, slope_bound_text, term_cap, json, out);
        }
        if (equiv->parsed()) return cmd_equiv(doc, divisor_name, divisor2_name, json, out);
        if (nu->parsed()) return cmd_nu(doc, perm_name, json, out);
        if (rrcheck->parsed()) return cmd_rrcheck(doc, json, out);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const invariant_violation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace tropdiv
