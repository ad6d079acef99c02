#include "shimura/order.hpp"

#include <algorithm>
#include <stdexcept>

#include "shimura/hilbert.hpp"

namespace shimura {

namespace {

Mat4R hnf_basis(const std::vector<Vec4R>& rows) {
    // Clear denominators, reduce to Hermite form over Z, restore scale.
    Int den = 1;
    for (const auto& r : rows)
        for (const auto& x : r) den = boost::multiprecision::lcm(den, shimura::den(x));
    std::vector<std::array<Int, 4>> zrows;
    for (const auto& r : rows) {
        std::array<Int, 4> zr;
        bool zero = true;
        for (int k = 0; k < 4; ++k) {
            Rational v = r[k] * den;
            zr[k] = num(v);
            if (zr[k] != 0) zero = false;
        }
        if (!zero) zrows.push_back(zr);
    }
    auto h = hnf_rows(zrows);
    if (h.size() != 4) throw std::domain_error("lattice does not have full rank");
    Mat4R out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = Rational(h[r][c], den);
    return out;
}

std::vector<QuatElement> basis_elements(const QuatAlgebra& alg, const Mat4R& basis) {
    std::vector<QuatElement> out;
    for (int k = 0; k < 4; ++k) out.push_back(QuatElement(alg, basis[k]));
    return out;
}

}  // namespace

bool is_order(const QuatAlgebra& alg, const Mat4R& basis, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (det4(basis) == 0) return fail("basis is singular");
    auto bs = basis_elements(alg, basis);
    QuatElement one = QuatElement::one(alg);
    // membership test against this basis
    auto in_lattice = [&](const QuatElement& x) {
        auto c = solve_row(basis, x.coeffs());
        if (!c) return false;
        for (const auto& v : *c)
            if (!is_integer(v)) return false;
        return true;
    };
    if (!in_lattice(one)) return fail("lattice does not contain 1");
    for (const auto& b : bs) {
        if (!is_integer(reduced_trace(b))) return fail("non-integral reduced trace");
        if (!is_integer(reduced_norm(b))) return fail("non-integral reduced norm");
    }
    for (const auto& a : bs)
        for (const auto& b : bs)
            if (!in_lattice(a * b)) return fail("lattice not closed under multiplication");
    if (why) why->clear();
    return true;
}

LatticeOrder::LatticeOrder(QuatAlgebra alg, Mat4R basis, bool validate)
    : alg_(std::move(alg)), basis_(std::move(basis)) {
    if (validate) {
        std::string why;
        if (!is_order(alg_, basis_, &why)) throw std::invalid_argument("not an order: " + why);
    }
}

QuatElement LatticeOrder::basis_element(int k) const { return QuatElement(alg_, basis_[k]); }

QuatElement LatticeOrder::element_from_coords(const Vec4R& c) const {
    Vec4R v{};
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) v[j] += c[k] * basis_[k][j];
    return QuatElement(alg_, v);
}

Vec4R LatticeOrder::coords_of(const QuatElement& x) const {
    auto c = solve_row(basis_, x.coeffs());
    if (!c) throw std::domain_error("singular order basis");
    return *c;
}

bool LatticeOrder::contains(const QuatElement& x) const {
    auto c = coords_of(x);
    for (const auto& v : c)
        if (!is_integer(v)) return false;
    return true;
}

Int LatticeOrder::reduced_discriminant() const {
    auto bs = basis_elements(alg_, basis_);
    Mat4R gram;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) gram[k][l] = reduced_trace(bs[k] * bs[l]);
    Rational d = det4(gram);
    if (d < 0) d = -d;
    if (!is_integer(d)) throw std::domain_error("non-integral trace form determinant");
    return exact_isqrt(num(d));
}

bool LatticeOrder::is_maximal() const { return reduced_discriminant() == discriminant(alg_); }

LatticeOrder LatticeOrder::standard(const QuatAlgebra& alg) {
    Mat4R b{};
    for (int k = 0; k < 4; ++k) b[k][k] = 1;
    return LatticeOrder(alg, b);
}

LatticeOrder LatticeOrder::from_ring_generators(const QuatAlgebra& alg,
                                                const std::vector<QuatElement>& gens) {
    std::vector<Vec4R> rows;
    rows.push_back(QuatElement::one(alg).coeffs());
    for (const auto& g : gens) rows.push_back(g.coeffs());
    Mat4R cur = hnf_basis(rows);
    for (int iter = 0; iter < 12; ++iter) {
        auto bs = basis_elements(alg, cur);
        std::vector<Vec4R> next;
        for (int k = 0; k < 4; ++k) next.push_back(cur[k]);
        for (const auto& a : bs)
            for (const auto& b : bs) next.push_back((a * b).coeffs());
        Mat4R closed = hnf_basis(next);
        if (closed == cur) return LatticeOrder(alg, cur);
        cur = closed;
    }
    throw std::domain_error("ring closure did not stabilize");
}

Int order_discriminant(const LatticeOrder& O) { return O.reduced_discriminant(); }

LatticeOrder maximalize(const LatticeOrder& O) {
    Int target = discriminant(O.algebra());
    LatticeOrder cur = O;
    while (true) {
        Int d = cur.reduced_discriminant();
        if (d == target) return cur;
        bool improved = false;
        for (const auto& [q, e] : factor(d)) {
            (void)e;
            // Scan (1/q) * (coefficient box mod q) for integral elements that
            // enlarge the order.
            long qq = static_cast<long>(q);
            std::array<long, 4> c{};
            for (c[0] = 0; c[0] < qq && !improved; ++c[0])
                for (c[1] = 0; c[1] < qq && !improved; ++c[1])
                    for (c[2] = 0; c[2] < qq && !improved; ++c[2])
                        for (c[3] = 0; c[3] < qq && !improved; ++c[3]) {
                            if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) continue;
                            Vec4R coords;
                            for (int k = 0; k < 4; ++k) coords[k] = Rational(Int(c[k]), q);
                            QuatElement x = cur.element_from_coords(coords);
                            if (!is_integer(reduced_trace(x)) || !is_integer(reduced_norm(x)))
                                continue;
                            try {
                                auto gens = basis_elements(cur.algebra(), cur.basis());
                                gens.push_back(x);
                                LatticeOrder bigger =
                                    LatticeOrder::from_ring_generators(cur.algebra(), gens);
                                if (bigger.reduced_discriminant() < d) {
                                    cur = bigger;
                                    improved = true;
                                }
                            } catch (const std::exception&) {
                                // candidate does not generate an order at this prime
                            }
                        }
            if (improved) break;
        }
        if (!improved)
            throw std::domain_error("maximalization stalled above discriminant " +
                                    target.str());
    }
}

Rational riemann_form(const QuatElement& x, const QuatElement& y, const QuatElement& mu) {
    QuatElement mu2 = mu * mu;
    if (!mu2.is_scalar() || mu2[0] >= 0)
        throw std::invalid_argument("riemann_form requires mu^2 a negative scalar");
    return reduced_trace(mu * x * conjugate(y));
}

std::optional<QuatElement> find_trace0_element_of_norm(const LatticeOrder& O, const Int& n,
                                                       int height) {
    std::optional<QuatElement> best;
    Vec4R bestCoords{};
    std::array<long, 4> c{};
    for (c[0] = -height; c[0] <= height; ++c[0])
        for (c[1] = -height; c[1] <= height; ++c[1])
            for (c[2] = -height; c[2] <= height; ++c[2])
                for (c[3] = -height; c[3] <= height; ++c[3]) {
                    Vec4R coords;
                    for (int k = 0; k < 4; ++k) coords[k] = Rational(c[k]);
                    QuatElement x = O.element_from_coords(coords);
                    if (reduced_trace(x) != 0) continue;
                    if (reduced_norm(x) != Rational(n)) continue;
                    if (!best || coords < bestCoords) {
                        best = x;
                        bestCoords = coords;
                    }
                }
    return best;
}

}  // namespace shimura
