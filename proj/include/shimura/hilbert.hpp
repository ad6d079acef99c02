#pragma once

#include <set>
#include <vector>

#include "shimura/quat.hpp"
#include "shimura/rational.hpp"

namespace shimura {

// A place of Q: a finite prime or the real place.
struct Place {
    bool finite;
    Int q;  // prime when finite

    static Place real() { return Place{false, 0}; }
    static Place prime(Int p) {
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.str());
        return Place{true, std::move(p)};
    }

    friend bool operator<(const Place& a, const Place& b) {
        if (a.finite != b.finite) return a.finite;  // real place sorts last
        return a.q < b.q;
    }
    friend bool operator==(const Place& a, const Place& b) {
        return a.finite == b.finite && a.q == b.q;
    }
};

// +1 if ax^2 + by^2 = z^2 has a nontrivial solution over Q_v, else -1.
// Finite v: exhaustive search of primitive solutions mod q^k with the
// Hensel-sufficient bound k = 2 ord_q(4ab) + 1, after square reductions.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

// Places where (alpha, beta) ramifies; always of even cardinality.
std::set<Place> ramified_places(const QuatAlgebra& A);

// Product of the finite ramified primes.
Int discriminant(const QuatAlgebra& A);

bool is_indefinite(const QuatAlgebra& A);

}  // namespace shimura
