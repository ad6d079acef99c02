#pragma once

#include <optional>
#include <vector>

#include "shimura/linalg.hpp"
#include "shimura/quat.hpp"

namespace shimura {

// Rank-4 integral lattice with ring structure inside a quaternion algebra.
// Rows of `basis` are the basis elements in 1, i, j, ij coordinates.
class LatticeOrder {
public:
    LatticeOrder(QuatAlgebra alg, Mat4R basis, bool validate = true);

    const QuatAlgebra& algebra() const { return alg_; }
    const Mat4R& basis() const { return basis_; }

    QuatElement basis_element(int k) const;
    QuatElement element_from_coords(const Vec4R& c) const;

    // Coordinates of x in the order basis; nullopt never occurs for a valid
    // basis (det != 0), so this returns the exact rational coordinates.
    Vec4R coords_of(const QuatElement& x) const;
    bool contains(const QuatElement& x) const;

    // Positive integer whose square is |det tr(b_k b_l)|.
    Int reduced_discriminant() const;
    bool is_maximal() const;

    // The order Z<1,i,j,ij>.
    static LatticeOrder standard(const QuatAlgebra& alg);

    // Z-module (not validated as an order) spanned by the generators,
    // saturated under multiplication; throws if closure fails to stabilize.
    static LatticeOrder from_ring_generators(const QuatAlgebra& alg,
                                             const std::vector<QuatElement>& gens);

private:
    QuatAlgebra alg_;
    Mat4R basis_;
};

// Validation predicate behind the constructor: contains 1, multiplicatively
// closed, integral reduced trace and norm on the lattice.
bool is_order(const QuatAlgebra& alg, const Mat4R& basis, std::string* why = nullptr);

Int order_discriminant(const LatticeOrder& O);

// Saturates prime by prime until the reduced discriminant equals the
// algebra discriminant.
LatticeOrder maximalize(const LatticeOrder& O);

// Riemann form tr(mu x conj(y)); requires mu^2 a negative rational scalar.
Rational riemann_form(const QuatElement& x, const QuatElement& y, const QuatElement& mu);

// Lexicographically smallest trace-0, norm-n element of O found within the
// coefficient box [-height, height]^4 (in the order basis), if any.
std::optional<QuatElement> find_trace0_element_of_norm(const LatticeOrder& O, const Int& n,
                                                       int height);

}  // namespace shimura
