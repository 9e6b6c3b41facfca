// SPDX-License-Identifier: MIT
// Python bindings. The surface is document-oriented: every entry point takes
// .tg text plus names, mirroring the command line, so callers never hold C++
// graph objects across the boundary.

#include "tropdiv/divisor.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/io.hpp"
#include "tropdiv/permutation.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/reduction.hpp"
#include "tropdiv/topology.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace tropdiv;

namespace {

const MetricGraph& metric_host(const TropicalCurve& c, const std::string& name) {
    if (!c.is_metric()) {
        throw validation_error("host '" + name + "' has infinite rays; this operation needs a "
                               "finite metric graph");
    }
    return c.metric;
}

py::dict summarize(const std::string& text) {
    Document doc = parse_document(text);
    py::list hosts, divisors, perms;
    for (const auto& [name, host] : doc.hosts) {
        py::dict h;
        h["name"] = name;
        h["vertices"] = host.metric.graph.vertex_count();
        h["edges"] = host.metric.graph.edge_count();
        h["rays"] = static_cast<int>(host.infinite_edges.size());
        h["genus"] = genus(host);
        hosts.append(h);
    }
    for (const NamedDivisor& nd : doc.divisors) {
        py::dict d;
        d["name"] = nd.name;
        d["host"] = nd.host;
        d["degree"] = degree(nd.d);
        divisors.append(d);
    }
    for (const NamedPerm& np : doc.perms) {
        py::dict p;
        p["name"] = np.name;
        p["host"] = np.host;
        p["points"] = static_cast<int>(np.perm.order.size());
        perms.append(p);
    }
    py::dict out;
    out["hosts"] = hosts;
    out["divisors"] = divisors;
    out["perms"] = perms;
    return out;
}

std::string canonical_text(const std::string& text) {
    return serialize_document(parse_document(text));
}

long long genus_of(const std::string& text, const std::string& host) {
    return genus(parse_document(text).host(host));
}

std::string canonical_of(const std::string& text, const std::string& host) {
    Document doc = parse_document(text);
    const TropicalCurve& c = doc.host(host);
    return curve_divisor_str(c, canonical_divisor_curve(c));
}

std::string reduce_at(const std::string& text, const std::string& divisor,
                      const std::string& base) {
    Document doc = parse_document(text);
    const NamedDivisor& nd = doc.divisor(divisor);
    const TropicalCurve& c = doc.host(nd.host);
    const MetricGraph& g = metric_host(c, nd.host);
    Point b = parse_point(c, base);
    return divisor_str(g, reduce_metric(g, nd.d, b).reduced);
}

RankMethod method_from(const std::string& name) {
    if (name == "auto") return RankMethod::Auto;
    if (name == "subdivision") return RankMethod::Subdivision;
    if (name == "enumeration") return RankMethod::Enumeration;
    throw validation_error("unknown rank method '" + name + "'");
}

py::dict rank_of(const std::string& text, const std::string& divisor, const std::string& method,
                 std::optional<long long> slope_bound, std::optional<long long> term_cap) {
    Document doc = parse_document(text);
    const NamedDivisor& nd = doc.divisor(divisor);
    const TropicalCurve& c = doc.host(nd.host);
    RankMethod m = method_from(method);

    std::optional<EnumerationBudget> budget;
    if (slope_bound || term_cap) {
        if (m != RankMethod::Enumeration) {
            throw validation_error("slope search options apply to the enumeration method");
        }
        EnumerationBudget b = default_enumeration_budget(c.metric, retract_divisor(c, nd.d));
        if (slope_bound) {
            if (*slope_bound <= 0) throw validation_error("slope bound must be positive");
            b.exact = Integer(static_cast<long>(*slope_bound)) >= b.slope_bound;
            b.slope_bound = Integer(static_cast<long>(*slope_bound));
        }
        if (term_cap) {
            if (*term_cap <= 0) throw validation_error("term cap must be positive");
            b.term_cap = *term_cap;
        }
        budget = b;
    }

    RankResult r = rank_tropical(c, nd.d, m, budget);
    py::dict out;
    out["rank"] = r.rank;
    out["exact"] = r.exact;
    if (!r.witness_unreachable.empty() || r.rank >= 0) {
        out["witness"] = curve_divisor_str(c, r.witness_unreachable);
    }
    if (r.certificate) {
        py::dict cert;
        cert["d_prime"] = curve_divisor_str(c, r.certificate->d_prime);
        out["certificate"] = cert;
    }
    return out;
}

bool equivalent_of(const std::string& text, const std::string& d1, const std::string& d2) {
    Document doc = parse_document(text);
    const NamedDivisor& a = doc.divisor(d1);
    const NamedDivisor& b = doc.divisor(d2);
    if (a.host != b.host) throw validation_error("divisors live on different hosts");
    const MetricGraph& g = metric_host(doc.host(a.host), a.host);
    return equivalent(g, a.d, b.d).equivalent;
}

std::string nu_of(const std::string& text, const std::string& perm) {
    Document doc = parse_document(text);
    const NamedPerm& np = doc.perm(perm);
    const MetricGraph& g = metric_host(doc.host(np.host), np.host);
    return divisor_str(g, nu_divisor(g, np.perm));
}

long long rr_residual_of(const std::string& text, const std::string& divisor) {
    Document doc = parse_document(text);
    const NamedDivisor& nd = doc.divisor(divisor);
    return riemann_roch_residual_curve(doc.host(nd.host), nd.d);
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(tropdiv, m) {
    m.doc() = "Divisor ranks, reduced forms, and equivalence on metric graphs "
              "and tropical curves";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);

    m.def("summarize", &summarize, py::arg("text"),
          "Parse a .tg document and describe its hosts, divisors, and orderings");
    m.def("canonical_text", &canonical_text, py::arg("text"),
          "Parse and reserialize a .tg document in canonical form");
    m.def("genus", &genus_of, py::arg("text"), py::arg("host"));
    m.def("canonical", &canonical_of, py::arg("text"), py::arg("host"),
          "Canonical divisor of a host, formatted");
    m.def("reduce", &reduce_at, py::arg("text"), py::arg("divisor"), py::arg("base"),
          "Base-reduced representative of a divisor class, formatted");
    m.def("rank", &rank_of, py::arg("text"), py::arg("divisor"), py::arg("method") = "auto",
          py::arg("slope_bound") = py::none(), py::arg("term_cap") = py::none(),
          "Rank of a divisor; returns a dict with rank, exact, and witnesses");
    m.def("equivalent", &equivalent_of, py::arg("text"), py::arg("d1"), py::arg("d2"));
    m.def("nu", &nu_of, py::arg("text"), py::arg("perm"),
          "Moving divisor of a point ordering, formatted");
    m.def("rr_residual", &rr_residual_of, py::arg("text"), py::arg("divisor"),
          "r(D) - r(K-D) - deg(D) - 1 + genus; zero for every divisor");
    m.def("run_cli", &run_cli, py::arg("args"),
          "Invoke the command line entry point; returns (exit_code, stdout, stderr)");
}
