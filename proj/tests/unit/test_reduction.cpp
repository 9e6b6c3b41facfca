// SPDX-License-Identifier: MIT
#include "doctest.h"

#include "../support/corpus.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/plfunc.hpp"
#include "tropdiv/reduction.hpp"

using namespace tropdiv;
using namespace tropdiv::testsupport;

TEST_CASE("graph reduction moves chips to the base") {
    MetricGraph b = banana(3);
    Divisor d;
    add_chip(d, Point::vertex(1), 3);

    GraphReduction r = reduce_graph(b.graph, d, 0);
    CHECK(chips_at(r.reduced, Point::vertex(0)) == 3);
    CHECK(degree(r.reduced) == 3);
    CHECK(is_reduced_graph(b.graph, r.reduced, 0, true));

    // idempotence with a zero certificate
    GraphReduction again = reduce_graph(b.graph, r.reduced, 0);
    CHECK(again.reduced == r.reduced);
    for (Int s : again.certificate) CHECK(s == 0);
}

TEST_CASE("cycle reduction example") {
    MetricGraph c3 = cycle(3);
    Divisor d;
    add_chip(d, Point::vertex(1), 2);
    GraphReduction r = reduce_graph(c3.graph, d, 0);
    CHECK(chips_at(r.reduced, Point::vertex(0)) == 1);
    CHECK(chips_at(r.reduced, Point::vertex(2)) == 1);
    CHECK(is_reduced_graph(c3.graph, r.reduced, 0, true));
}

TEST_CASE("reducedness testing") {
    MetricGraph b = banana(3);
    Divisor at_base;
    add_chip(at_base, Point::vertex(0), 3);
    CHECK(is_reduced_graph(b.graph, at_base, 0, true));

    Divisor away;
    add_chip(away, Point::vertex(1), 3);
    CHECK_FALSE(is_reduced_graph(b.graph, away, 0, true));

    Divisor neg;
    add_chip(neg, Point::vertex(1), -1);
    CHECK_FALSE(is_reduced_graph(b.graph, neg, 0, true));
}

TEST_CASE("saturation counts cut edges") {
    MetricGraph b = banana(3);
    Divisor d;
    add_chip(d, Point::vertex(1), 3);
    std::vector<bool> in_set{false, true};
    SaturationReport rep = saturation(b.graph, d, in_set, 1);
    CHECK(rep.edges_leaving == 3);
    CHECK(rep.chips == 3);
    CHECK(rep.saturated);
}

TEST_CASE("metric reduction of the length-234 banana") {
    MetricGraph g = banana234();
    Divisor d;
    add_chip(d, Point::vertex(1), 3);

    MetricReduction r = reduce_metric(g, d, Point::vertex(0));
    Divisor want;
    add_chip(want, Point::vertex(0), 1);
    add_chip(want, Point::interior(1, Rational(1)), 1);
    add_chip(want, Point::interior(2, Rational(2)), 1);
    CHECK(r.reduced == want);

    // the certificate is a genuine equivalence witness
    CHECK(divisor_of(g, r.certificate) == combine(1, r.reduced, -1, d));

    // idempotence
    MetricReduction again = reduce_metric(g, r.reduced, Point::vertex(0));
    CHECK(again.reduced == r.reduced);
    CHECK(divisor_of(g, again.certificate).empty());
}

TEST_CASE("metric reduction is equivalence invariant") {
    Rng rng(31);
    MetricGraph g = banana(3);
    for (int it = 0; it < 25; ++it) {
        Divisor d = random_vertex_divisor(rng, g.graph, -2, 2);
        PLFunction f = random_pl(rng, g);
        Divisor shifted = combine(1, d, 1, divisor_of(g, f));
        MetricReduction r1 = reduce_metric(g, d, Point::vertex(0));
        MetricReduction r2 = reduce_metric(g, shifted, Point::vertex(0));
        CHECK(r1.reduced == r2.reduced);
    }
}

TEST_CASE("base points inside edges work") {
    MetricGraph g = cycle(3);
    Divisor d;
    add_chip(d, Point::vertex(2), 1);
    Point base = Point::interior(0, Rational(1, 2));
    MetricReduction r = reduce_metric(g, d, base);
    CHECK(degree(r.reduced) == 1);
    CHECK(is_reduced_metric(g, r.reduced, base));
}

TEST_CASE("equivalence testing") {
    MetricGraph tree = path_graph(3);
    Divisor at0, at2;
    add_chip(at0, Point::vertex(0), 1);
    add_chip(at2, Point::vertex(2), 1);
    EquivalenceResult eq = equivalent(tree, at0, at2);
    CHECK(eq.equivalent);
    REQUIRE(eq.witness.has_value());
    CHECK(divisor_of(tree, *eq.witness) == combine(1, at2, -1, at0));

    MetricGraph c3 = cycle(3);
    Divisor v0, v1;
    add_chip(v0, Point::vertex(0), 1);
    add_chip(v1, Point::vertex(1), 1);
    CHECK_FALSE(equivalent(c3, v0, v1).equivalent);
    CHECK(equivalent(c3, v0, v0).equivalent);

    // degree mismatch short-circuits
    Divisor two;
    add_chip(two, Point::vertex(0), 2);
    CHECK_FALSE(equivalent(c3, v0, two).equivalent);
}

TEST_CASE("epsilon detects empty linear systems") {
    MetricGraph b = banana(3);
    CHECK(epsilon(b, Divisor{}) == 0);

    Divisor neg;
    add_chip(neg, Point::vertex(0), -1);
    CHECK(epsilon(b, neg) == 1);

    Divisor k = canonical_divisor(b);
    CHECK(epsilon(b, k) == 0);

    Permutation p;
    p.order = {Point::vertex(0), Point::vertex(1)};
    CHECK(epsilon(b, nu_divisor(b, p)) == 1);
    p.order = {Point::vertex(1), Point::vertex(0)};
    CHECK(epsilon(b, nu_divisor(b, p)) == 1);
}

TEST_CASE("nonspecial witnesses") {
    MetricGraph b = banana(3);

    Divisor eff;
    add_chip(eff, Point::vertex(1), 2);
    NonspecialWitness w1 = nonspecial_witness(b, eff);
    CHECK(w1.rank_nonnegative);
    CHECK_FALSE(w1.witness.has_value());

    Divisor neg;
    add_chip(neg, Point::vertex(0), -1);
    NonspecialWitness w2 = nonspecial_witness(b, neg);
    CHECK_FALSE(w2.rank_nonnegative);
    REQUIRE(w2.witness.has_value());
    Divisor nu = nu_divisor(b, *w2.witness);
    CHECK(divisor_leq(w2.reduced, nu));
    CHECK(epsilon(b, combine(1, nu, -1, neg)) == 0);

    // exclusivity over random divisors
    Rng rng(32);
    for (int it = 0; it < 40; ++it) {
        Divisor d = random_vertex_divisor(rng, b.graph, -2, 2);
        NonspecialWitness w = nonspecial_witness(b, d);
        CHECK(w.rank_nonnegative == !w.witness.has_value());
        if (w.witness) {
            Divisor nuw = nu_divisor(b, *w.witness);
            CHECK(divisor_leq(w.reduced, nuw));
            CHECK(epsilon(b, combine(1, nuw, -1, d)) == 0);
        }
    }
}

TEST_CASE("epsilon respects equivalence") {
    Rng rng(33);
    MetricGraph c3 = cycle(3);
    for (int it = 0; it < 25; ++it) {
        Divisor d = random_vertex_divisor(rng, c3.graph, -2, 2);
        PLFunction f = random_pl(rng, c3);
        CHECK(epsilon(c3, d) == epsilon(c3, combine(1, d, 1, divisor_of(c3, f))));
    }
}
