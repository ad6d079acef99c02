#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "shimura/genus_audit.hpp"
#include "shimura/hilbert.hpp"

using namespace shimura;

TEST_CASE("finite group orders") {
    auto g5 = group_orders(5);
    CHECK(g5.gl2 == 480);
    CHECK(g5.pgl2 == 120);
    CHECK(g5.psl2 == 60);

    CHECK(group_orders(2).gl2 == 6);

    // brute-force count of invertible matrices mod 5
    int count = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                for (int d = 0; d < 5; ++d)
                    if ((a * d - b * c) % 5 != 0) ++count;
    CHECK(count == 480);

    // pgl2/p^3 -> 1 monotonically
    double prev = 0;
    for (long p : {5, 7, 11, 13, 17}) {
        double ratio = static_cast<double>(group_orders(p).pgl2) /
                       (static_cast<double>(p) * p * p);
        CHECK(ratio < 1.0);
        CHECK(ratio > prev);
        prev = ratio;
    }

    CHECK_THROWS(group_orders(6));
}

TEST_CASE("invariant catalog") {
    auto cat = load_catalog(default_catalog_path());
    REQUIRE(cat.size() >= 3);

    for (const auto& rec : cat) {
        CHECK(orbifold_euler(rec) < 0);
        CHECK(rec.source.size() > 0);

        // chi equals -prod (q-1)/6 over primes dividing the discriminant
        Rational prod = 1;
        for (const auto& [q, a] : factor(Int(rec.discriminant))) {
            CHECK(a == 1);
            prod *= Rational(q - 1);
        }
        CHECK(orbifold_euler(rec) == -prod / 6);

        // the stated presentation realizes the discriminant
        QuatAlgebra alg(rec.alpha, rec.beta);
        CHECK(discriminant(alg) == rec.discriminant);
    }

    auto d6 = catalog_lookup(6);
    CHECK(d6.genus == 0);
    CHECK(d6.e2 == 2);
    CHECK(d6.e3 == 2);

    CHECK_THROWS(catalog_lookup(1));
    CHECK_THROWS(catalog_lookup(7));
    CHECK_THROWS(load_catalog("/nonexistent/catalog.json"));

    // malformed record is rejected with its index
    const char* tmp = "/tmp/bad_catalog.json";
    {
        std::ofstream out(tmp);
        out << R"([{"discriminant": 6, "algebra": [-1, 3], "genus": 0}])";
    }
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("record 0"),
                         std::runtime_error);
    std::remove(tmp);
}

TEST_CASE("catalog cross-check against enumerated torsion classes") {
    for (const auto& rec : load_catalog(default_catalog_path())) {
        QuatAlgebra alg(rec.alpha, rec.beta);
        auto O = maximalize(LatticeOrder::standard(alg));
        CHECK(O.reduced_discriminant() == rec.discriminant);
        auto counts = elliptic_class_counts(O, rec.cross_check_height);
        CHECK(counts.first == rec.e2);
        CHECK(counts.second == rec.e3);
    }
}

TEST_CASE("level genus from Euler characteristic multiplicativity") {
    auto l5 = level_genus(6, 5);
    CHECK(l5.components == 2);
    CHECK(l5.degree == 60);
    CHECK(l5.genus == 11);

    auto l7 = level_genus(6, 7);
    CHECK(l7.components == 1);
    CHECK(l7.degree == 336);
    CHECK(l7.genus == 57);
    CHECK(l7.genus > l5.genus);

    CHECK(level_genus(6, 11).genus == 221);
    CHECK(level_genus(6, 13).genus == 183);

    // desk-scale growth band g/p^3
    for (long p : {5, 7, 11, 13}) {
        double ratio = static_cast<double>(level_genus(6, p).genus) /
                       (static_cast<double>(p) * p * p);
        CHECK(ratio > 1e-2);
        CHECK(ratio < 1e2);
    }

    CHECK_THROWS(level_genus(6, 3));  // divides the discriminant
    CHECK_THROWS(level_genus(6, 4));
    CHECK_THROWS(level_genus(7, 5));  // not in catalog
}

TEST_CASE("genus bounds and bidegree model") {
    CHECK(genus_lower(2, 2) == 1);
    CHECK(genus_lower(6, 2) == 3 * genus_lower(2, 2));
    // one quarter of C.K with K = (2g-2)F
    const Int cf = 4, g = 11;
    CHECK(genus_lower(cf, g) == Rational(cf * (2 * g - 2), 4));
    CHECK_THROWS(genus_lower(0, 2));

    CHECK(genus_upper(1, 1, 0.0) == doctest::Approx(1.0));
    CHECK(genus_upper(10, 3, 4.0) == doctest::Approx(1 + 20 + 2));
    CHECK(genus_upper(1, 0, 0.0) < 1.0);
    CHECK_THROWS(genus_upper(0, 1, 0.0));

    CHECK(bidegree_identity(1, 480) == 480);
    CHECK(bidegree_identity(3, 480) == 3 * bidegree_identity(1, 480));
    CHECK_THROWS(bidegree_identity(0, 480));
}

TEST_CASE("projective closure of unit images") {
    QuatAlgebra alg(-1, 3);
    auto O = maximalize(LatticeOrder::standard(alg));

    std::vector<QuatElement> gens = enumerate_elements(O, 1, 4);
    {
        auto m1 = norm_minus_one_unit(O, 4);
        REQUIRE(m1.has_value());
        gens.push_back(*m1);
    }

    // full projective image: pgl2 when -1 is a nonsquare, psl2 otherwise
    auto n5 = nori_check(O, gens, 5);
    CHECK(n5.image_order == 60);
    CHECK(n5.matches_psl2);
    CHECK(n5.surjective);

    auto n7 = nori_check(O, gens, 7);
    CHECK(n7.image_order == 336);
    CHECK(n7.matches_pgl2);
    CHECK(n7.surjective);

    auto n11 = nori_check(O, gens, 11);
    CHECK(n11.image_order == 1320);
    CHECK(n11.surjective);

    // a single elliptic element generates a small cyclic image
    auto t = torsion_elements(O, TorsionKind::Order4, 4).front();
    auto cyc = nori_check(O, {t}, 5);
    CHECK(cyc.image_order <= 2);
    CHECK_FALSE(cyc.surjective);

    // congruence-kernel generators have trivial image
    auto kernel = congruence_filter(O, enumerate_elements(O, 1, 10), 5);
    REQUIRE(kernel.size() > 0);
    auto triv = nori_check(O, kernel, 5);
    CHECK(triv.image_order == 1);

    // monotone: adding generators never shrinks the image
    std::vector<QuatElement> some(gens.begin(), gens.begin() + 3);
    CHECK(nori_check(O, some, 5).image_order <= n5.image_order);

    CHECK_THROWS(nori_check(O, {QuatElement(alg, {5, 0, 0, 0})}, 5));
}

TEST_CASE("threshold estimator") {
    auto rep = threshold_search(2, 6);
    CHECK(rep.found);
    CHECK(rep.p_threshold > 0);
    CHECK(rep.lower_at_threshold > rep.upper_at_threshold);
    // regression value frozen after the first verified run
    CHECK(rep.p_threshold == 157);

    // nondecreasing in k
    auto rep3 = threshold_search(3, 6);
    CHECK(rep3.found);
    CHECK(rep3.p_threshold >= rep.p_threshold);

    // vanishing budgets reduce to the bare Riemann-Hurwitz crossover
    BudgetConstants zero;
    zero.c1 = 0;
    zero.c2 = 0;
    auto bare = threshold_search(2, 6, zero);
    CHECK(bare.found);
    CHECK(bare.p_threshold == 5);

    // exhausted range is reported, not invented
    BudgetConstants narrow;
    narrow.p_max = 7;
    auto none = threshold_search(2, 6, narrow);
    CHECK_FALSE(none.found);
    CHECK(none.p_threshold == 0);

    CHECK_THROWS(threshold_search(0, 6));
    CHECK_THROWS(threshold_search(2, 7));
}
