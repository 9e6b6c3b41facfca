// SPDX-License-Identifier: MIT
#include "tropdiv/rational.hpp"

#include "tropdiv/errors.hpp"

#include <cctype>

namespace tropdiv {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    // mpq_class's string constructor accepts non-canonical input and leaves
    // the value undefined unless canonicalize() is called, and it is laxer
    // than our grammar (hex, whitespace). Parse the pieces by hand.
    std::string num = text;
    std::string den = "1";
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    bool neg = false;
    if (!num.empty() && num[0] == '-') {
        neg = true;
        num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

Integer rational_floor_div(const Rational& a, const Rational& b) {
    Rational r = a / b;
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return out;
}

bool rational_is_integer(const Rational& q) {
    return q.get_den() == 1;
}

Int to_int_checked(const Integer& z, const char* what) {
    if (!z.fits_slong_p()) {
        throw invariant_violation(std::string(what) + ": value exceeds 64-bit range");
    }
    return static_cast<Int>(z.get_si());
}

} // namespace tropdiv
