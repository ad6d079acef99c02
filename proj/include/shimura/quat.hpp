#pragma once

#include <array>
#include <concepts>
#include <string>
#include <type_traits>

#include "shimura/rational.hpp"

namespace shimura {

// Rational quaternion algebra (alpha, beta / Q): span of 1, i, j, ij with
// i^2 = alpha, j^2 = beta, ij = -ji.
struct QuatAlgebra {
    Rational alpha;
    Rational beta;

    QuatAlgebra(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
        if (alpha == 0 || beta == 0)
            throw std::invalid_argument("quaternion algebra parameters must be nonzero");
    }

    friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) {
        return x.alpha == y.alpha && x.beta == y.beta;
    }
};

// Element x0 + x1 i + x2 j + x3 ij with exact rational coefficients.
class QuatElement {
public:
    QuatElement(QuatAlgebra alg, std::array<Rational, 4> coeffs)
        : alg_(std::move(alg)), c_(std::move(coeffs)) {}

    static QuatElement scalar(const QuatAlgebra& alg, const Rational& s) {
        return QuatElement(alg, {s, 0, 0, 0});
    }
    static QuatElement one(const QuatAlgebra& alg) { return scalar(alg, 1); }

    const QuatAlgebra& algebra() const { return alg_; }
    const std::array<Rational, 4>& coeffs() const { return c_; }
    const Rational& operator[](int k) const { return c_[k]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_scalar() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    std::string str() const;

private:
    QuatAlgebra alg_;
    std::array<Rational, 4> c_;
};

QuatElement operator+(const QuatElement& x, const QuatElement& y);
QuatElement operator-(const QuatElement& x, const QuatElement& y);
QuatElement operator-(const QuatElement& x);
QuatElement operator*(const QuatElement& x, const QuatElement& y);
QuatElement scalar_mul(const Rational& s, const QuatElement& x);

// Constrained so that unrelated types (e.g. matrix expressions found via the
// same operator lookup) are never tested for conversion to Rational.
template <class S>
    requires std::same_as<S, Rational> || std::same_as<S, Int> || std::is_arithmetic_v<S>
QuatElement operator*(const S& s, const QuatElement& x) {
    return scalar_mul(Rational(s), x);
}
bool operator==(const QuatElement& x, const QuatElement& y);

QuatElement conjugate(const QuatElement& x);
Rational reduced_trace(const QuatElement& x);
Rational reduced_norm(const QuatElement& x);

// x^{-1} = conj(x)/N(x); throws on zero norm.
QuatElement inverse(const QuatElement& x);

QuatElement pow(const QuatElement& x, int n);

// Canonical sign: first nonzero coefficient positive ("mod +-1" convention).
QuatElement sign_normalized(const QuatElement& x);

}  // namespace shimura
