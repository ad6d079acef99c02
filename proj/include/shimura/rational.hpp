#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shimura {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Floor of num/den for a rational that is known to be an integer.
inline Int to_int(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.str());
    return num(r);
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Canonical "num/den" form used by all JSON surfaces.
std::string to_fraction_string(const Rational& r);

// Accepts "num/den" and bare integers "num".
Rational parse_rational(const std::string& s);

// Trial-division factorization; desk-scale inputs only.
std::vector<std::pair<Int, int>> factor(Int n);

// Exact integer square root; throws if n is not a perfect square.
Int exact_isqrt(const Int& n);

bool is_prime(const Int& n);

}  // namespace shimura
