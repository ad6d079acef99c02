#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "shimura/cm_hecke.hpp"
#include "shimura/hilbert.hpp"

using namespace shimura;

namespace {

const double kPi = 3.14159265358979323846;

QuatAlgebra alg6() { return QuatAlgebra(-1, 3); }

LatticeOrder max6() { return maximalize(LatticeOrder::standard(alg6())); }

Eigen::Matrix2d mat2(double a, double b, double c, double d) {
    Eigen::Matrix2d m;
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("fixed points of elliptic matrices") {
    auto z = fixed_point(mat2(0, -1, 1, 0));
    CHECK(std::abs(z.value - Complex(0, 1)) < 1e-12);

    auto z6 = fixed_point(mat2(1, -1, 1, 0));
    CHECK(std::abs(z6.value - Complex(0.5, std::sqrt(3.0) / 2)) < 1e-12);

    // equivariance under conjugation
    Eigen::Matrix2d u = mat2(2, 1, 1, 1);
    Eigen::Matrix2d t = mat2(0, -1, 1, 0);
    auto moved = fixed_point(u * t * u.inverse());
    auto expect = moebius_act(u, fixed_point(t));
    CHECK(std::abs(moved.value - expect.value) < 1e-10);

    CHECK_THROWS(fixed_point(mat2(2, 0, 0, 0.5)));   // hyperbolic
    CHECK_THROWS(fixed_point(mat2(1, 1, 0, 1)));     // parabolic, c = 0
}

TEST_CASE("automorphy eigenvalue at the fixed point") {
    Eigen::Matrix2d t4 = mat2(0, -1, 1, 0);
    auto z = fixed_point(t4);
    auto ev = elliptic_eigenvalue(t4, z);
    CHECK(std::abs(ev - Complex(0, 1)) < 1e-12);

    Eigen::Matrix2d t6 = mat2(1, -1, 1, 0);
    auto ev6 = elliptic_eigenvalue(t6, fixed_point(t6));
    CHECK(std::abs(ev6 - std::polar(1.0, kPi / 3)) < 1e-12);

    // sign of the lift flips the eigenvalue
    auto evn = elliptic_eigenvalue(-t6, fixed_point(t6));
    CHECK(std::abs(evn + ev6) < 1e-12);
}

TEST_CASE("cm point construction normalizes the lift") {
    auto O = max6();
    for (auto kind : {TorsionKind::Order4, TorsionKind::Order6}) {
        for (const auto& t : torsion_elements(O, kind, 6)) {
            auto P = make_cm_point(t);
            CHECK(P.eigenvalue.imag() > 0);
            CHECK(std::abs(std::abs(P.eigenvalue) - 1.0) < 1e-12);
            CHECK(P.fixed.value.imag() > 0);
            CHECK((P.stab == t || P.stab == -t));
            // raw construction keeps the given lift
            auto raw = make_cm_point(-P.stab, false);
            CHECK(raw.eigenvalue.imag() < 0);
        }
    }
    CHECK_THROWS(make_cm_point(QuatElement(alg6(), {2, 0, 0, 0})));
}

TEST_CASE("pair classification dichotomy") {
    auto mk = [](Complex ev) {
        CMPoint p{QuatElement::one(alg6()), Eigen::Matrix2d::Identity(), uhp({0, 1}), ev};
        return p;
    };
    const Complex i(0, 1);
    const Complex w3 = std::polar(1.0, 2 * kPi / 3);

    CHECK(classify_pair(mk(i), mk(i), 1) == CMLabel::Heegner);
    CHECK(classify_pair(mk(i), mk(-i), 1) == CMLabel::AntiHeegner);
    // exponent -1 with equal eigenvalues of order 3 is the conjugate case
    CHECK(classify_pair(mk(w3), mk(w3), -1) == CMLabel::AntiHeegner);
    CHECK(classify_pair(mk(w3), mk(std::conj(w3)), -1) == CMLabel::Heegner);

    // conjugating the first coordinate flips the label
    CHECK(classify_pair(mk(std::conj(w3)), mk(w3), -1) == CMLabel::Heegner);
    CHECK(classify_pair(mk(std::conj(i)), mk(i), 1) == CMLabel::AntiHeegner);

    CHECK_THROWS(classify_pair(mk(std::polar(1.0, 0.3)), mk(std::polar(1.0, 1.0)), 1));
    CHECK_THROWS(classify_pair(mk(i), mk(i), 2));
}

TEST_CASE("cm pair scan at level 5") {
    auto O = max6();
    auto pairs = cm_pair_scan(O, 5, 8);
    REQUIRE(pairs.size() > 0);

    int heegner = 0, anti = 0, diagonal = 0;
    for (const auto& pr : pairs) {
        if (pr.label == CMLabel::Heegner)
            ++heegner;
        else
            ++anti;

        // re-verify the congruence exactly
        const QuatElement te = pr.exponent == 1 ? pr.first.stab : conjugate(pr.first.stab);
        const QuatElement s = pr.conjugator * te * conjugate(pr.conjugator);
        const QuatElement diff =
            pr.sigma == 1 ? s - pr.first.stab : s + pr.first.stab;
        for (const auto& c : O.coords_of(diff)) {
            CHECK(is_integer(c));
            CHECK(num(c) % 5 == 0);
        }

        // second coordinate is the conjugator image of the first
        auto w = moebius_act(real_embedding(pr.conjugator), pr.first.fixed);
        CHECK(std::abs(w.value - pr.second.fixed.value) < 1e-9);

        // pairs on the diagonal carry the same eigenvalue at both feet
        if (std::abs(pr.second.fixed.value - pr.first.fixed.value) < 1e-9 &&
            pr.label == CMLabel::Heegner)
            ++diagonal;
    }
    CHECK(heegner > 0);
    CHECK(anti > 0);
    CHECK(diagonal > 0);

    CHECK_THROWS(cm_pair_scan(O, 4, 4));
}

TEST_CASE("repulsion linear system") {
    auto O = max6();
    auto t = make_cm_point(torsion_elements(O, TorsionKind::Order4, 4).front()).stab;
    const QuatElement one = QuatElement::one(alg6());

    SUBCASE("trivial witnesses give the centralizer") {
        auto sol = repulsion_solve(t, one, one);
        CHECK(sol.dim == 2);
        REQUIRE(sol.centralizer.size() == 2);
        for (const auto& c : sol.centralizer) CHECK(c * t == t * c);
        // the span contains both 1 and t: centralizer of a nonscalar element
        // is the quadratic field it generates
        auto in_span = [&](const QuatElement& x) {
            std::vector<Vec4R> rows;
            Vec4R r0, r1;
            for (int k = 0; k < 4; ++k) {
                r0[k] = sol.centralizer[0][k];
                r1[k] = sol.centralizer[1][k];
            }
            // x in span iff appending x keeps the kernel dimension
            std::vector<Vec4R> test{r0, r1, x.coeffs()};
            return kernel4(test).size() == kernel4({r0, r1}).size();
        };
        CHECK(in_span(one));
        CHECK(in_span(t));
    }

    SUBCASE("centralizer witnesses stay degenerate") {
        auto sol = repulsion_solve(t, t, conjugate(t));
        CHECK(sol.dim == 2);
    }

    SUBCASE("one-sided generic witness has no solution") {
        // g and u g both centralizing t would force u into the quadratic
        // field of t, so the kernel must vanish
        QuatElement u = one;
        bool found = false;
        for (const auto& cand : enumerate_elements(O, 1, 6)) {
            if (cand * t == t * cand) continue;
            u = cand;
            found = true;
            break;
        }
        REQUIRE(found);
        CHECK(repulsion_solve(t, u, one).dim == 0);
    }

    SUBCASE("linked witness pairs cut to a line") {
        QuatElement u = one;
        for (const auto& cand : enumerate_elements(O, 1, 6))
            if (!(cand * t == t * cand)) {
                u = cand;
                break;
            }

        // two distinct quadratic subfields meet in the scalars
        auto same = repulsion_solve(t, u, conjugate(u));
        REQUIRE(same.dim == 1);
        CHECK(same.g->is_scalar());
        CHECK(*same.M == 1);

        // conjugators differing by a centralizer unit: the line is that unit
        auto linked = repulsion_solve(t, u, conjugate(u * t));
        REQUIRE(linked.dim == 1);
        CHECK((*linked.g == t || *linked.g == -t));
        CHECK(*linked.M == 1);

        // a nonscalar, nontrivial linking degree exists among unit pairs
        bool found_larger = false;
        auto units = enumerate_elements(O, 1, 4);
        for (size_t a = 0; a < units.size() && !found_larger; ++a)
            for (size_t b = 0; b < units.size() && !found_larger; ++b) {
                auto sol = repulsion_solve(t, units[a], conjugate(units[b]));
                if (sol.dim != 1 || *sol.M <= 1) continue;
                found_larger = true;
                const auto& g = *sol.g;
                CHECK(g * t == t * g);
                auto lhs = units[a] * g * conjugate(units[b]);
                CHECK(lhs * t == t * lhs);
                CHECK(reduced_norm(g) > 0);  // definite quadratic subfield
            }
        CHECK(found_larger);
    }
}

TEST_CASE("hecke sets modulo left units") {
    auto O = max6();

    auto h5 = hecke_elements(O, 5, 8);
    CHECK(h5.expected == 6);
    CHECK(h5.classes.size() == 6);
    CHECK_FALSE(h5.height_limited);

    auto h7 = hecke_elements(O, 7, 8);
    CHECK(h7.expected == 8);
    CHECK(h7.classes.size() == 8);

    for (const auto& c : h5.classes) CHECK(reduced_norm(c) == 5);

    // representatives are pairwise inequivalent
    const Rational inv5 = Rational(1) / Rational(5);
    for (size_t a = 0; a < h5.classes.size(); ++a)
        for (size_t b = a + 1; b < h5.classes.size(); ++b) {
            auto u = scalar_mul(inv5, h5.classes[a] * conjugate(h5.classes[b]));
            CHECK_FALSE(O.contains(u));
        }

    auto h1 = hecke_elements(O, 1, 4);
    CHECK(h1.classes.size() == 1);
    CHECK(h1.expected == 1);

    // norm divisible by a ramified prime: no degree formula
    auto h3 = hecke_elements(O, 3, 6);
    CHECK(h3.expected == 0);

    CHECK_THROWS(hecke_elements(O, 0, 4));
}

TEST_CASE("cyclic submodule counts") {
    CHECK(submodule_count(1) == 1);
    CHECK(submodule_count(2) == 3);
    CHECK(submodule_count(3) == 4);
    CHECK(submodule_count(4) == 6);
    CHECK(submodule_count(5) == 6);
    CHECK(submodule_count(6) == 12);
    CHECK(submodule_count(9) == 12);
    CHECK(submodule_count(25) == 30);

    // multiplicativity
    CHECK(submodule_count(10) == submodule_count(2) * submodule_count(5));

    // prime power formula p^a + p^{a-1}
    CHECK(submodule_count(8) == 12);
    CHECK(submodule_count(27) == 36);

    CHECK_THROWS(submodule_count(6, Int(6)));
    CHECK_THROWS(submodule_count(0));
}

TEST_CASE("hecke tube membership") {
    auto O = max6();
    Normalization norm;
    auto h5 = hecke_elements(O, 5, 8);
    REQUIRE(h5.all.size() > 0);

    const Complex z(0.1, 0.05);
    // image of z under the first correspondence branch lies on the tube axis
    const auto& g = h5.all.front();
    Eigen::Matrix2d M = real_embedding(g) / std::sqrt(5.0);
    Complex w = to_disk(moebius_act(M, to_uhp(disk(z)))).value;
    CHECK(hecke_tube_contains(h5.all, 1e-8, z, w, norm));
    CHECK(hecke_tube_contains(h5.all, 0.3, z, w, norm));

    // a generic far point misses every branch at small radius
    CHECK_FALSE(hecke_tube_contains(h5.all, 1e-3, z, Complex(-0.7, 0.6), norm));

    // curvature -4 halves distances
    Normalization n4;
    n4.curvature = -4.0;
    CHECK(hecke_tube_contains(h5.all, 0.16, z, w, n4));
}

TEST_CASE("repulsion experiment at level 5") {
    auto O = max6();
    Normalization norm;

    // at unit radius no two distinct second coordinates over a common base
    // point come close: the repulsion statement at this scale
    auto rep = repulsion_experiment(O, 5, 1.0, 8, norm);
    CHECK(rep.heegner_pairs > 0);
    CHECK(rep.close_pairs == 0);
    CHECK(rep.max_M == 0);
    CHECK(rep.all_verified);

    // widening the radius past the observed separation produces linked
    // pairs, and every dim-1 link is verified on its tube exactly
    auto wide = repulsion_experiment(O, 5, 8.0, 8, norm);
    CHECK(wide.close_pairs > 0);
    CHECK(wide.close_pairs ==
          wide.dim0_cases + wide.dim1_cases + wide.dim2_cases);
    CHECK(wide.all_verified);
    if (wide.dim1_cases > 0) {
        CHECK(wide.max_M > 0);
        CHECK(wide.max_M < 10000);  // linking degrees stay at desk scale
    }
}
