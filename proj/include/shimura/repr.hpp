#pragma once

#include <Eigen/Dense>
#include <array>

#include "shimura/order.hpp"
#include "shimura/quat.hpp"

namespace shimura {

// Element a + b*sqrt(alpha) of the quadratic field attached to the algebra.
struct QuadExt {
    Rational a;
    Rational b;

    friend bool operator==(const QuadExt& x, const QuadExt& y) = default;
};

QuadExt qe_add(const QuadExt& x, const QuadExt& y);
QuadExt qe_sub(const QuadExt& x, const QuadExt& y);
QuadExt qe_mul(const QuadExt& x, const QuadExt& y, const Rational& alpha);

using Mat2K = std::array<std::array<QuadExt, 2>, 2>;

Mat2K mat2k_mul(const Mat2K& x, const Mat2K& y, const Rational& alpha);
QuadExt mat2k_det(const Mat2K& m, const Rational& alpha);
QuadExt mat2k_trace(const Mat2K& m);

// Left multiplication matrix of x on the algebra viewed as a right module
// over Q(sqrt(alpha)) with basis {1, j}.  Algebra homomorphism with
// det = reduced norm and trace = reduced trace.
Mat2K left_regular_rep(const QuatElement& x);

// Embedding into M_2(R) for an indefinite algebra.  When alpha < 0 the
// generators are swapped first so a real square root exists; throws for
// definite algebras.
Eigen::Matrix2d real_embedding(const QuatElement& x);

using Mat2Z = std::array<std::array<long, 2>, 2>;

struct SplitRep {
    long p = 0;
    // Images mod p of the four order basis elements.
    std::array<Mat2Z, 4> images;

    Mat2Z image_of(const LatticeOrder& O, const QuatElement& x) const;
};

// Explicit isomorphism O/pO -> M_2(F_p) for an odd prime p not dividing
// the algebra discriminant, found by brute force over trace-zero matrices.
SplitRep split_mod_p(const LatticeOrder& O, long p);

Mat2Z mat2z_mul(const Mat2Z& x, const Mat2Z& y, long p);

}  // namespace shimura
