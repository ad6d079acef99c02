#pragma once

#include <optional>

#include "shimura/arith_group.hpp"
#include "shimura/curves.hpp"
#include "shimura/hyperbolic.hpp"

namespace shimura {

enum class CMLabel { Heegner, AntiHeegner };

// Fixed point of an elliptic determinant-one matrix: the upper root of
// c z^2 + (d - a) z - b = 0.
HPoint fixed_point(const Eigen::Matrix2d& m);

// Automorphy phase (c z + d)/|c z + d| at the fixed point.
Complex elliptic_eigenvalue(const Eigen::Matrix2d& m, const HPoint& z);

struct CMPoint {
    QuatElement stab;
    Eigen::Matrix2d matrix;
    HPoint fixed;        // UHP
    Complex eigenvalue;  // unit modulus
};

// normalize_sign picks the lift of {t, -t} whose eigenvalue lies in the
// upper half circle.
CMPoint make_cm_point(const QuatElement& t, bool normalize_sign = true);

// Heegner iff eigenvalue(a) equals eigenvalue(b)^exponent (exponent -1
// meaning complex conjugate on the circle); AntiHeegner iff it equals the
// conjugate of that; anything else is an inconsistency.
CMLabel classify_pair(const CMPoint& a, const CMPoint& b, int exponent,
                      double tol = 1e-8);

struct CMPair {
    CMPoint first;
    CMPoint second;
    QuatElement conjugator;
    int exponent;  // e with u t^e u^{-1} = sigma t mod p
    int sigma;
    long level;
    CMLabel label;
};

// All (z_t, u z_t) with u t^e u^{-1} = +-t mod p over torsion t of both
// kinds and norm-1 conjugators u in the box, deduplicated by fixed points.
std::vector<CMPair> cm_pair_scan(const LatticeOrder& O, long p, int height);

struct RepulsionSolution {
    int dim;  // 0, 1, or 2
    std::optional<QuatElement> g;
    std::optional<Int> M;
    std::vector<QuatElement> centralizer;  // basis when dim == 2
};

// Exact rational solve of {g t = t g, (h_z g h_w) t = t (h_z g h_w)} in the
// four coefficients of g.
RepulsionSolution repulsion_solve(const QuatElement& t, const QuatElement& h_z,
                                  const QuatElement& h_w);

struct HeckeSet {
    Int m;
    std::vector<QuatElement> classes;  // representatives modulo left units
    std::vector<QuatElement> all;      // every box element of norm m
    Int expected;                      // degree-formula value, 0 if undefined
    bool height_limited;
};

HeckeSet hecke_elements(const LatticeOrder& O, const Int& m, int height);

// Number of cyclic order-N submodules of (Z/N)^2, counted by brute force
// over row spans of 2x2 matrices mod N.
Int submodule_count(long N, const Int& coprime_to = 1);

// Exists g in the set with d(phi(g) z, w) < r (disk model, matrices
// normalized to det 1).
bool hecke_tube_contains(const std::vector<QuatElement>& gs, double r, Complex z,
                         Complex w, const Normalization& norm);

struct RepulsionReport {
    int heegner_pairs = 0;
    int close_pairs = 0;
    int dim0_cases = 0;  // no link found by the linear system; no claim made
    int dim1_cases = 0;
    int dim2_cases = 0;
    Int max_M = 0;
    bool all_verified = true;  // tube memberships of every dim-1 case
};

// Over simultaneously r-close distinct Heegner pairs sharing a base point,
// run the linear solver and verify both coordinates land on T_{N(g)}.
RepulsionReport repulsion_experiment(const LatticeOrder& O, long p, double r, int height,
                                     const Normalization& norm);

}  // namespace shimura
