#include "shimura/arith_group.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace shimura {

GroupElement make_group_element(const QuatElement& u) {
    if (reduced_norm(u) != 1)
        throw std::invalid_argument("group element must have reduced norm 1");
    QuatElement rep = sign_normalized(u);
    return GroupElement{rep, real_embedding(rep)};
}

namespace {

// Integer Gram matrix S with N(sum c_k b_k) = c^T S c / (2 * scale).
struct NormForm {
    long long s[4][4];
    long long scale;
};

NormForm norm_form(const LatticeOrder& O) {
    Mat4R gram;
    Int den = 1;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            gram[k][l] = reduced_trace(O.basis_element(k) * conjugate(O.basis_element(l)));
            den = boost::multiprecision::lcm(den, shimura::den(gram[k][l]));
        }
    NormForm f{};
    f.scale = static_cast<long long>(den);
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) f.s[k][l] = static_cast<long long>(num(gram[k][l] * den));
    return f;
}

bool sign_canonical(const long c[4]) {
    for (int k = 0; k < 4; ++k) {
        if (c[k] > 0) return true;
        if (c[k] < 0) return false;
    }
    return false;  // zero excluded
}

}  // namespace

std::vector<QuatElement> enumerate_elements(const LatticeOrder& O, const Int& norm,
                                            int height) {
    if (height < 1) return {};
    NormForm f = norm_form(O);
    long long target = 2 * f.scale * static_cast<long long>(norm);
    std::vector<QuatElement> out;
    long c[4];
    for (c[0] = -height; c[0] <= height; ++c[0])
        for (c[1] = -height; c[1] <= height; ++c[1])
            for (c[2] = -height; c[2] <= height; ++c[2]) {
                // partial sums over the first three coordinates
                long long q00 = 0;
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) q00 += f.s[k][l] * c[k] * c[l];
                long long lin = 0;
                for (int k = 0; k < 3; ++k) lin += (f.s[k][3] + f.s[3][k]) * c[k];
                for (c[3] = -height; c[3] <= height; ++c[3]) {
                    long long v = q00 + lin * c[3] + f.s[3][3] * c[3] * c[3];
                    if (v != target) continue;
                    if (!sign_canonical(c)) continue;
                    Vec4R coords;
                    for (int k = 0; k < 4; ++k) coords[k] = Rational(c[k]);
                    out.push_back(O.element_from_coords(coords));
                }
            }
    return out;
}

std::optional<QuatElement> norm_minus_one_unit(const LatticeOrder& O, int height) {
    auto found = enumerate_elements(O, Int(-1), height);
    if (found.empty()) return std::nullopt;
    return found.front();
}

bool unit_norm_minus_one_exists(const LatticeOrder& O, int height) {
    return norm_minus_one_unit(O, height).has_value();
}

std::vector<QuatElement> congruence_filter(const LatticeOrder& O,
                                           const std::vector<QuatElement>& elems, long p) {
    SplitRep rep = split_mod_p(O, p);
    std::vector<QuatElement> kept;
    for (const auto& u : elems) {
        Mat2Z m = rep.image_of(O, u);
        bool plus = m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1] && m[0][0] == 1;
        bool minus = m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1] && m[0][0] == p - 1;
        if (plus || minus) kept.push_back(u);
    }
    return kept;
}

std::optional<Int> min_congruence_trace(const LatticeOrder& O, long p, int height) {
    auto units = enumerate_elements(O, Int(1), height);
    auto kernel = congruence_filter(O, units, p);
    std::optional<Int> best;
    for (const auto& u : kernel) {
        Rational t = reduced_trace(u);
        if (t == 2 || t == -2) {
            if (u == QuatElement::scalar(u.algebra(), 1) ||
                u == QuatElement::scalar(u.algebra(), -1))
                continue;
        }
        Int at = boost::multiprecision::abs(to_int(t));
        if (!best || at < *best) best = at;
    }
    return best;
}

double displacement_lower(const Rational& trace) {
    double t = std::abs(to_double(trace));
    if (t <= 2.0) throw std::domain_error("element is not hyperbolic");
    return std::acosh((t * t - 2.0) / 2.0);
}

std::vector<QuatElement> torsion_elements(const LatticeOrder& O, TorsionKind kind,
                                          int height) {
    std::vector<QuatElement> out;
    for (const auto& u : enumerate_elements(O, Int(1), height)) {
        Rational t = reduced_trace(u);
        bool keep = (kind == TorsionKind::Order4) ? (t == 0) : (t == 1 || t == -1);
        if (keep && !u.is_scalar()) out.push_back(sign_normalized(u));
    }
    return out;
}

namespace {

// Orbit partition of torsion representatives under conjugation by the given
// units and inversion, all modulo sign.
int orbit_count(const std::vector<QuatElement>& torsion,
                const std::vector<QuatElement>& units) {
    if (torsion.empty()) return 0;
    std::map<std::array<Rational, 4>, int> index;
    for (size_t k = 0; k < torsion.size(); ++k) index[torsion[k].coeffs()] = static_cast<int>(k);
    std::vector<int> parent(torsion.size());
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto link = [&](size_t k, const QuatElement& img) {
        auto it = index.find(sign_normalized(img).coeffs());
        if (it != index.end()) unite(static_cast<int>(k), it->second);
    };
    for (size_t k = 0; k < torsion.size(); ++k) {
        link(k, inverse(torsion[k]));
        for (const auto& u : units) link(k, u * torsion[k] * inverse(u));
    }
    int classes = 0;
    for (size_t k = 0; k < torsion.size(); ++k)
        if (find(static_cast<int>(k)) == static_cast<int>(k)) ++classes;
    return classes;
}

}  // namespace

std::pair<int, int> elliptic_class_counts(const LatticeOrder& O, int height) {
    if (height < 1) return {0, 0};
    // Conjugators are norm-1 units only: the curve's uniformizing group.
    std::vector<QuatElement> units = enumerate_elements(O, Int(1), height);
    int e2 = orbit_count(torsion_elements(O, TorsionKind::Order4, height), units);
    int e3 = orbit_count(torsion_elements(O, TorsionKind::Order6, height), units);
    return {e2, e3};
}

int component_structure(const LatticeOrder& O, long p, int height) {
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    if (p % 4 == 3 && unit_norm_minus_one_exists(O, height)) return 1;
    return 2;
}

}  // namespace shimura
