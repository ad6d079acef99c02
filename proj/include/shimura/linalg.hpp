#pragma once

#include <array>
#include <optional>
#include <vector>

#include "shimura/rational.hpp"

namespace shimura {

using Vec4R = std::array<Rational, 4>;
using Mat4R = std::array<Vec4R, 4>;

Rational det4(const Mat4R& m);

// Solves c * B = v for the row vector c (exact); nullopt if B is singular.
std::optional<Vec4R> solve_row(const Mat4R& basis, const Vec4R& v);

// Basis of the right kernel {x : M x = 0} of an m x 4 rational matrix.
std::vector<Vec4R> kernel4(const std::vector<Vec4R>& rows);

// Row Hermite normal form of an integer matrix with 4 columns; returns the
// nonzero rows (pivots positive, entries above pivots reduced).
std::vector<std::array<Int, 4>> hnf_rows(std::vector<std::array<Int, 4>> rows);

// Scales a rational vector to a primitive integer vector (content 1),
// first nonzero entry positive.
std::array<Int, 4> primitive_integer_vector(const Vec4R& v);

}  // namespace shimura
