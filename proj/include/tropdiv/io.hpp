// SPDX-License-Identifier: MIT
#pragma once

#include "tropdiv/divisor.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/permutation.hpp"
#include "tropdiv/topology.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tropdiv {

struct NamedDivisor {
    std::string name;
    std::string host;
    Divisor d;
};

struct NamedPerm {
    std::string name;
    std::string host;
    Permutation perm;
};

// One parsed .tg document. Hosts are stored as tropical curves; a plain
// metric graph is a curve with no rays. Declaration order is preserved so
// serialization is byte-stable.
struct Document {
    std::vector<std::pair<std::string, TropicalCurve>> hosts;
    std::vector<NamedDivisor> divisors;
    std::vector<NamedPerm> perms;

    const TropicalCurve& host(const std::string& name) const;
    const NamedDivisor& divisor(const std::string& name) const;
    const NamedPerm& perm(const std::string& name) const;
};

// Resolves "NAME" (vertex or unbounded end) or "EDGE@OFFSET" on a host.
// Offsets count from the edge's declared first endpoint and must be strictly
// interior; offsets on a ray only need to be positive.
Point parse_point(const TropicalCurve& host, const std::string& token);

// Throws tg_parse_error with 1-based line/column positions on bad input.
Document parse_document(const std::string& text);

// Canonical form: hosts, then divisors, then perms, each in declaration
// order; rationals in lowest terms. parse(serialize(doc)) round-trips and
// serializing again yields identical bytes.
std::string serialize_document(const Document& doc);

// The command line entry point. args excludes the program name. Returns the
// process exit code: 0 on success, 1 for bad input, 2 for a violated
// invariant (including a nonzero residual from rrcheck).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropdiv
