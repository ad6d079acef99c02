#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "shimura/order.hpp"
#include "shimura/repr.hpp"

namespace shimura {

// Unit of the order modulo +-1: sign-normalized representative with positive
// reduced norm and the cached determinant-one real matrix.
struct GroupElement {
    QuatElement rep;
    Eigen::Matrix2d matrix;
};

GroupElement make_group_element(const QuatElement& u);

// All elements of the given reduced norm whose coefficient vector in the
// order basis lies in [-height, height]^4, modulo sign, in lexicographic
// coefficient order.  The box is basis-relative by design.
std::vector<QuatElement> enumerate_elements(const LatticeOrder& O, const Int& norm,
                                            int height);

// One-sided certificate: a norm -1 element found within the box, if any.
std::optional<QuatElement> norm_minus_one_unit(const LatticeOrder& O, int height);
bool unit_norm_minus_one_exists(const LatticeOrder& O, int height);

// Keeps the elements whose mod-p image is +-identity (the principal
// congruence kernel at p).
std::vector<QuatElement> congruence_filter(const LatticeOrder& O,
                                           const std::vector<QuatElement>& elems, long p);

// Minimum of |tr| over nontrivial congruence-kernel units in the box.
std::optional<Int> min_congruence_trace(const LatticeOrder& O, long p, int height);

// Translation length lower bound arcosh((tr^2 - 2)/2) for a hyperbolic
// norm-one unit; rejects |tr| <= 2.
double displacement_lower(const Rational& trace);

enum class TorsionKind { Order4, Order6 };

// Order-4: tr = 0, N = 1 (square is -1).  Order-6: tr = +-1, N = 1.
std::vector<QuatElement> torsion_elements(const LatticeOrder& O, TorsionKind kind,
                                          int height);

// Conjugacy class counts of the two torsion kinds under units enumerated at
// the same height, identifying t with t^{-1}; a lower-bound certificate.
std::pair<int, int> elliptic_class_counts(const LatticeOrder& O, int height);

// Number of components of the level-p curve: 1 when a norm -1 unit exists
// (at the given height) and -1 is a non-square mod p, else 2.
int component_structure(const LatticeOrder& O, long p, int height);

}  // namespace shimura
