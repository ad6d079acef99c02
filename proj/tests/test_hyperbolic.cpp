#include <cmath>
#include <random>

#include "doctest.h"
#include "shimura/curves.hpp"
#include "shimura/hyperbolic.hpp"

using namespace shimura;

namespace {

Complex random_disk_point(std::mt19937& rng, double rmax = 0.8) {
    std::uniform_real_distribution<double> rd(0, rmax), ad(0, 2 * M_PI);
    return std::polar(rd(rng), ad(rng));
}

Eigen::Matrix2d random_posdet(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-2, 2);
    Eigen::Matrix2d m;
    do {
        m << d(rng), d(rng), d(rng), d(rng);
    } while (m.determinant() <= 0.1);
    return m;
}

}  // namespace

TEST_CASE("distances") {
    CHECK(dist(uhp({0, 1}), uhp({0, 2})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(dist(uhp({0, 1}), uhp({1, 1})) == doctest::Approx(std::acosh(1.5)).epsilon(1e-12));
    CHECK(dist(uhp({0.3, 0.7}), uhp({0.3, 0.7})) == doctest::Approx(0.0));
    CHECK_THROWS(dist(uhp({0, 1}), disk({0, 0})));

    std::mt19937 rng(41);
    for (int t = 0; t < 200; ++t) {
        Complex a = random_disk_point(rng), b = random_disk_point(rng),
                c = random_disk_point(rng);
        // model agreement
        double dd = dist(disk(a), disk(b));
        double du = dist(to_uhp(disk(a)), to_uhp(disk(b)));
        CHECK(dd == doctest::Approx(du).epsilon(1e-10));
        // symmetry and triangle inequality
        CHECK(dd == doctest::Approx(dist(disk(b), disk(a))).epsilon(1e-12));
        CHECK(dist(disk(a), disk(c)) <= dd + dist(disk(b), disk(c)) + 1e-10);
        // isometry
        Eigen::Matrix2d M = random_posdet(rng);
        CHECK(dist(moebius_act(M, disk(a)), moebius_act(M, disk(b))) ==
              doctest::Approx(dd).epsilon(1e-9));
    }
    Eigen::Matrix2d T;
    T << 1, 1, 0, 1;
    HPoint img = moebius_act(T, uhp({0, 1}));
    CHECK(img.value.real() == doctest::Approx(1.0));
    CHECK(img.value.imag() == doctest::Approx(1.0));
    Eigen::Matrix2d bad;
    bad << 1, 0, 0, -1;
    CHECK_THROWS(moebius_act(bad, uhp({0, 1})));
}

TEST_CASE("psi basics") {
    CHECK(psi(disk({0, 0}), disk({0, 0})) == doctest::Approx(0.0));
    std::mt19937 rng(42);
    for (int t = 0; t < 100; ++t) {
        Complex w = random_disk_point(rng);
        double v = psi(disk({0, 0}), disk(w));
        CHECK(v == doctest::Approx(std::norm(w)).epsilon(1e-12));
        double d = dist(disk({0, 0}), disk(std::conj(w)));
        CHECK(v == doctest::Approx(std::pow(std::tanh(d / 2.0), 2)).epsilon(1e-10));
        // vanishing exactly on the conjugate diagonal
        Complex z = random_disk_point(rng);
        CHECK(psi(disk(z), disk(std::conj(z))) == doctest::Approx(0.0).epsilon(1e-14));
        if (std::abs(z - std::conj(w)) > 1e-3)
            CHECK(psi(disk(std::conj(w) + (z - std::conj(w))), disk(w)) > 0.0);
    }
}

TEST_CASE("psi diagonal invariance") {
    std::mt19937 rng(43);
    for (int t = 0; t < 100; ++t) {
        Complex z = random_disk_point(rng), w = random_disk_point(rng);
        Eigen::Matrix2d M = random_posdet(rng);
        Complex gz = moebius_act(M, disk(z)).value;
        // second slot transforms so that conj(w) moves by g
        Complex gw = std::conj(moebius_act(M, disk(std::conj(w))).value);
        CHECK(psi(disk(gz), disk(gw)) ==
              doctest::Approx(psi(disk(z), disk(w))).epsilon(1e-9));
    }
}

TEST_CASE("potential F structure") {
    PotentialF F(0.4, 1.1);
    // e^c - 1 = sinh^2(r/2)
    CHECK(std::expm1(F.c) == doctest::Approx(std::pow(std::sinh(0.2), 2)).epsilon(1e-12));
    CHECK(F.h_prime(F.c) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(F.h_prime(F.C) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(F.h(F.c) == doctest::Approx(F.c).epsilon(1e-12));
    // plateau on the conjugate diagonal
    CHECK(F(disk({0, 0}), disk({0, 0})) == doctest::Approx(F.c));
    CHECK(F(disk({0.05, 0.02}), disk({0.05, -0.02})) == doctest::Approx(F.c));
    // outer band: F - S constant (slope 1 in s)
    double s1 = F.C + 0.3, s2 = F.C + 0.9;
    CHECK(F.value_s(s1) - s1 == doctest::Approx(F.value_s(s2) - s2).epsilon(1e-10));
    // continuity at the seams
    CHECK(F.value_s(F.c + 1e-9) == doctest::Approx(F.c).epsilon(1e-6));
    CHECK(F.value_s(F.C - 1e-9) == doctest::Approx(F.h_at_C).epsilon(1e-6));
    CHECK_THROWS(PotentialF(1.0, 0.5));
}

TEST_CASE("hessian of S and omega_std") {
    std::mt19937 rng(44);
    Potential2 S = [](Complex z, Complex w) { return potential_S(disk(z), disk(w)); };
    for (int t = 0; t < 100; ++t) {
        Complex w = random_disk_point(rng, 0.6);
        Eigen::Matrix2cd H = complex_hessian(S, Complex(0, 0), w, 1e-3);
        double d2 = 1.0 / std::pow(1.0 - std::norm(w), 2);
        CHECK(H(0, 0).real() == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(H(1, 1).real() == doctest::Approx(d2).epsilon(1e-5));
        // omega_S = omega_std / 2
        Eigen::Matrix2cd W = omega_std(Complex(0, 0), w);
        CHECK(H(0, 0).real() == doctest::Approx(W(0, 0).real() / 2).epsilon(1e-5));
        CHECK(H(1, 1).real() == doctest::Approx(W(1, 1).real() / 2).epsilon(1e-5));
    }
    // generic points: omega_S = omega_std/2 in trace after moving the base
    for (int t = 0; t < 100; ++t) {
        Complex z = random_disk_point(rng, 0.5), w = random_disk_point(rng, 0.5);
        if (psi(disk(z), disk(w)) < 1e-3) continue;
        Eigen::Matrix2cd H = complex_hessian(S, z, w, 1e-3);
        Eigen::Matrix2cd W = omega_std(z, w);
        CHECK(H(0, 0).real() == doctest::Approx(W(0, 0).real() / 2).epsilon(2e-5));
        CHECK(H(1, 1).real() == doctest::Approx(W(1, 1).real() / 2).epsilon(2e-5));
        CHECK(std::abs(H(0, 1)) < 1e-4 * std::abs(W.trace()));
    }
    // pluriharmonic input
    Potential2 ph = [](Complex z, Complex w) {
        return (z * z * w + 3.0 * w * w * w + z).real();
    };
    Eigen::Matrix2cd Hp = complex_hessian(ph, Complex(0.2, 0.1), Complex(-0.1, 0.3), 1e-3);
    CHECK(Hp.norm() < 1e-8);
}

TEST_CASE("hessian of F by band") {
    double r = 0.5, R = 1.2;
    PotentialF F(r, R);
    Potential2 fF = [&](Complex z, Complex w) { return F(disk(z), disk(w)); };
    Potential2 fS = [](Complex z, Complex w) { return potential_S(disk(z), disk(w)); };
    std::mt19937 rng(45);
    int inner = 0, middle = 0, outer = 0;
    double dom = 1.0 / (1.0 - std::sqrt(std::expm1(F.c) / std::expm1(F.C)));
    while (inner < 20 || middle < 20 || outer < 20) {
        Complex z = random_disk_point(rng, 0.85), w = random_disk_point(rng, 0.85);
        if (F.seam_distance(disk(z), disk(w)) < 2e-2) continue;
        double p = psi(disk(z), disk(w));
        double pr = std::pow(std::tanh(r / 2), 2), pR = std::pow(std::tanh(R / 2), 2);
        Eigen::Matrix2cd H = complex_hessian(fF, z, w, 5e-4);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(H);
        CHECK(es.eigenvalues().minCoeff() > -1e-6);  // positivity off seams
        if (p < pr && inner < 20) {
            ++inner;
            CHECK(H.norm() < 1e-6);
        } else if (p > pR && outer < 20) {
            ++outer;
            Eigen::Matrix2cd HS = complex_hessian(fS, z, w, 5e-4);
            CHECK((H - HS).norm() < 1e-5 * std::max(1.0, HS.norm()));
        } else if (p > pr && p < pR && middle < 20) {
            ++middle;
            // domination by the constant multiple of omega_std/2
            Eigen::Matrix2cd bound = dom * 0.5 * omega_std(z, w) - H;
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eb(bound);
            CHECK(eb.eigenvalues().minCoeff() > -1e-4 * bound.norm());
        }
    }
}

TEST_CASE("lelong estimates") {
    for (int m : {1, 2, 3}) {
        Potential2 phi = [m](Complex z, Complex w) {
            Complex f = std::pow(z - Complex(0.1, 0.2) + std::pow(w - Complex(0.3, 0.0), 2),
                                 m);
            return std::log(std::abs(f));
        };
        auto res = lelong_estimate(phi, Complex(0.1, 0.2), Complex(0.3, 0.0));
        CHECK(res.singular);
        CHECK(res.value == doctest::Approx(double(m)).epsilon(0.02));
    }
    Potential2 smooth = [](Complex z, Complex w) {
        return std::norm(z) + std::exp(w.real());
    };
    auto res = lelong_estimate(smooth, Complex(0.1, 0.1), Complex(0.0, 0.0));
    CHECK_FALSE(res.singular);
    CHECK(res.value == 0.0);
}

TEST_CASE("curve volumes against closed forms") {
    Normalization k1{-1.0};
    double r = 0.8;
    // fiber over a hyperbolic ball: area of the disk of radius r
    auto fib = fiber_curve(Complex(0.1, -0.2));
    auto vol = curve_volume(fib, region_ball(Complex(0.1, -0.2), Complex(0.3, 0.1), r, k1),
                            k1, 5e-4, 128, 5);
    double expect = 4.0 * M_PI * std::pow(std::sinh(r / 2.0), 2);
    CHECK(vol.value == doctest::Approx(expect).epsilon(5e-3));

    // isometry graph through its fixed point: twice the projected disk area
    auto g = graph_neg_z();
    auto volg = curve_volume(g, region_ball(Complex(0, 0), Complex(0, 0), r, k1), k1,
                             5e-4, 128, 5);
    double projected = 4.0 * M_PI * std::pow(std::sinh(r / (2.0 * std::sqrt(2.0))), 2);
    CHECK(volg.value == doctest::Approx(2.0 * projected).epsilon(5e-3));

    // empty region
    Region empty = [](Complex, Complex) { return false; };
    CHECK(curve_volume(g, empty, k1, 1e-3, 32, 1).value == 0.0);

    // additivity and monotonicity over disjoint radii bands
    auto ball_small = region_ball(Complex(0, 0), Complex(0, 0), 0.5, k1);
    auto ball_big = region_ball(Complex(0, 0), Complex(0, 0), 0.9, k1);
    Region annulus = [=](Complex z, Complex w) { return ball_big(z, w) && !ball_small(z, w); };
    double vs = curve_volume(g, ball_small, k1, 5e-4, 128, 5).value;
    double vb = curve_volume(g, ball_big, k1, 5e-4, 128, 5).value;
    double va = curve_volume(g, annulus, k1, 5e-4, 128, 5).value;
    CHECK(vb == doctest::Approx(vs + va).epsilon(5e-3));
    CHECK(vb >= vs);
}

TEST_CASE("curvature -4 normalization scales") {
    Normalization k1{-1.0}, k4{-4.0};
    auto fib = fiber_curve(Complex(0, 0));
    double r = 0.6;
    // under curvature -4 the same hyperbolic radius covers twice the
    // curvature -1 radius, at a quarter of the density
    auto v4 = curve_volume(fib, region_ball(Complex(0, 0), Complex(0, 0), r, k4), k4,
                           5e-4, 128, 5);
    double expect = M_PI * std::pow(std::sinh(r), 2);
    CHECK(v4.value == doctest::Approx(expect).epsilon(5e-3));
}
