#include "shimura/hilbert.hpp"

#include <cstdint>

namespace shimura {

namespace {

int ord_q(Int n, const Int& q) {
    if (n == 0) return 1 << 20;
    int e = 0;
    while (n % q == 0) { n /= q; ++e; }
    return e;
}

Int modpow(Int base, Int e, const Int& m) {
    base %= m;
    if (base < 0) base += m;
    Int r = 1;
    while (e > 0) {
        if (e % 2 == 1) r = r * base % m;
        base = base * base % m;
        e /= 2;
    }
    return r;
}

// Legendre symbol (u|q) for odd prime q, u a unit mod q.
int legendre(const Int& u, const Int& q) {
    Int r = modpow(u, (q - 1) / 2, q);
    return r == 1 ? 1 : -1;
}

// Whether the residue t mod q^k is a square residue mod q^k.
bool is_square_residue(Int t, const Int& q, int k, const Int& M) {
    t %= M;
    if (t < 0) t += M;
    if (t == 0) return true;
    int e = 0;
    while (t % q == 0) { t /= q; ++e; }
    if (e >= k) return true;
    if (e % 2 == 1) return false;
    if (q == 2) {
        int rem = k - e;  // need u = 1 mod 2^min(3, rem)
        Int mod = rem >= 3 ? 8 : (Int(1) << rem);
        return t % mod == 1;
    }
    return legendre(t, q) == 1;
}

// Primitive-solution search for ax^2+by^2=z^2 mod q^k. Any primitive
// solution has x or y a unit, so after scaling it suffices to scan
// (x=1, y free) and (x in qZ, y=1).
int finite_symbol(Int a, Int b, const Int& q) {
    // Only the class of a, b modulo squares matters: strip q^2 factors.
    auto strip = [&](Int& n) { while (n % (q * q) == 0) n /= q * q; };
    strip(a);
    strip(b);
    if (a % q == 0 && b % q == 0) {
        // (a,b) = (a,-ab); -ab has even q-order, so this lands in ord <= 1.
        b = -(a * b) / (q * q);
        strip(b);
    }
    if (a % q == 0) std::swap(a, b);  // symbol is symmetric

    int k = 2 * ord_q(4 * a * b, q) + 1;
    Int M = 1;
    for (int t = 0; t < k; ++t) M *= q;
    if (M > 30'000'000)
        throw std::domain_error("hilbert_symbol: modulus q^k too large for desk-scale search");

    Int am = a % M, bm = b % M;
    if (am < 0) am += M;
    if (bm < 0) bm += M;

    for (Int y = 0; y < M; ++y)
        if (is_square_residue(am + bm * y * y, q, k, M)) return 1;
    Int Mq = M / q;
    Int aq2 = a % M * q % M * q % M;
    for (Int x = 0; x < Mq; ++x)
        if (is_square_residue(aq2 * x * x + bm, q, k, M)) return 1;
    return -1;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("hilbert symbol arguments must be nonzero");
    if (!v.finite) return (a < 0 && b < 0) ? -1 : 1;
    // Clearing denominators multiplies each argument by a square.
    Int ia = num(a) * den(a);
    Int ib = num(b) * den(b);
    return finite_symbol(ia, ib, v.q);
}

std::set<Place> ramified_places(const QuatAlgebra& A) {
    std::set<Int> candidates{2};
    for (const Rational* r : {&A.alpha, &A.beta}) {
        for (auto& [p, e] : factor(num(*r))) candidates.insert(p);
        for (auto& [p, e] : factor(den(*r))) candidates.insert(p);
    }
    std::set<Place> ram;
    for (const Int& q : candidates) {
        Place v = Place::prime(q);
        if (hilbert_symbol(A.alpha, A.beta, v) == -1) ram.insert(v);
    }
    if (hilbert_symbol(A.alpha, A.beta, Place::real()) == -1) ram.insert(Place::real());
    return ram;
}

Int discriminant(const QuatAlgebra& A) {
    Int d = 1;
    for (const Place& v : ramified_places(A))
        if (v.finite) d *= v.q;
    return d;
}

bool is_indefinite(const QuatAlgebra& A) {
    return hilbert_symbol(A.alpha, A.beta, Place::real()) == 1;
}

}  // namespace shimura
