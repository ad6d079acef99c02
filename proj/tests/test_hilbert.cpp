#include "doctest.h"
#include "shimura/hilbert.hpp"

using namespace shimura;

namespace {

// Independent oracle: the classical closed-form evaluation via Legendre
// symbols (odd q) and the mod-8 characters (q = 2).
int legendre(long a, long q) {
    a %= q;
    if (a < 0) a += q;
    if (a == 0) return 0;
    long r = 1, base = a, e = (q - 1) / 2;
    while (e) {
        if (e & 1) r = (r * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

int oracle_symbol(long a, long b, long q) {
    if (q == 0) return (a < 0 && b < 0) ? -1 : 1;  // real place
    long al = 0, be = 0;
    while (a % q == 0) { a /= q; ++al; }
    while (b % q == 0) { b /= q; ++be; }
    if (q == 2) {
        auto eps = [](long u) { return ((u - 1) / 2) % 2 != 0 ? 1 : 0; };  // u odd
        auto omg = [](long u) { long m = ((u % 8) + 8) % 8; return (m == 3 || m == 5) ? 1 : 0; };
        int e = eps(a) * eps(b) + al * omg(b) + be * omg(a);
        return (e % 2 == 0) ? 1 : -1;
    }
    int e = al * be * ((q - 1) / 2);
    int s = (e % 2 == 0) ? 1 : -1;
    if (be % 2 != 0) s *= legendre(a, q);
    if (al % 2 != 0) s *= legendre(b, q);
    return s;
}

}  // namespace

TEST_CASE("symbol agrees with the closed form") {
    const long primes[] = {2, 3, 5, 7, 11, 13};
    for (long a = -20; a <= 20; ++a) {
        if (a == 0) continue;
        for (long b = -20; b <= 20; ++b) {
            if (b == 0) continue;
            for (long q : primes) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(q);
                CHECK(hilbert_symbol(Rational(a), Rational(b), Place::prime(Int(q))) ==
                      oracle_symbol(a, b, q));
            }
            CHECK(hilbert_symbol(Rational(a), Rational(b), Place::real()) ==
                  oracle_symbol(a, b, 0));
        }
    }
}

TEST_CASE("symbol handles rational entries") {
    CHECK(hilbert_symbol(Rational(1, 3), Rational(3), Place::prime(3)) ==
          hilbert_symbol(Rational(3), Rational(3), Place::prime(3)));
    CHECK(hilbert_symbol(Rational(-1, 4), Rational(-1), Place::prime(2)) ==
          hilbert_symbol(Rational(-1), Rational(-1), Place::prime(2)));
    CHECK_THROWS(hilbert_symbol(Rational(0), Rational(1), Place::prime(3)));
}

TEST_CASE("ramified places and discriminant") {
    QuatAlgebra hamilton{-1, -1};
    auto ram = ramified_places(hamilton);
    REQUIRE(ram.size() == 2);
    CHECK(ram.count(Place::prime(2)) == 1);
    CHECK(ram.count(Place::real()) == 1);
    CHECK(discriminant(hamilton) == 2);
    CHECK_FALSE(is_indefinite(hamilton));

    QuatAlgebra A{-1, 3};
    CHECK(discriminant(A) == 6);
    CHECK(is_indefinite(A));
    auto ramA = ramified_places(A);
    REQUIRE(ramA.size() == 2);
    CHECK(ramA.count(Place::prime(2)) == 1);
    CHECK(ramA.count(Place::prime(3)) == 1);

    CHECK(discriminant(QuatAlgebra{1, 5}) == 1);
    CHECK(discriminant(QuatAlgebra{2, -1}) == 1);
}

TEST_CASE("ramification set has even size") {
    for (long a = -15; a <= 15; ++a) {
        if (a == 0) continue;
        for (long b = -15; b <= 15; ++b) {
            if (b == 0) continue;
            CHECK(ramified_places(QuatAlgebra{Rational(a), Rational(b)}).size() % 2 == 0);
        }
    }
}
