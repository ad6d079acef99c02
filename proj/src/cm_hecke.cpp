#include "shimura/cm_hecke.hpp"

#include <numeric>

#include "shimura/hilbert.hpp"
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace shimura {

namespace {

// Matrices of left/right multiplication acting on 1, i, j, ij coefficient
// columns: coeffs(a x) = L(a) c(x), coeffs(x a) = R(a) c(x).
Mat4R left_mult_matrix(const QuatElement& a) {
    Mat4R M{};
    for (int k = 0; k < 4; ++k) {
        std::array<Rational, 4> e{};
        e[k] = 1;
        auto col = (a * QuatElement(a.algebra(), e)).coeffs();
        for (int r = 0; r < 4; ++r) M[r][k] = col[r];
    }
    return M;
}

Mat4R right_mult_matrix(const QuatElement& a) {
    Mat4R M{};
    for (int k = 0; k < 4; ++k) {
        std::array<Rational, 4> e{};
        e[k] = 1;
        auto col = (QuatElement(a.algebra(), e) * a).coeffs();
        for (int r = 0; r < 4; ++r) M[r][k] = col[r];
    }
    return M;
}

Mat4R mat_sub(const Mat4R& a, const Mat4R& b) {
    Mat4R c{};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) c[r][k] = a[r][k] - b[r][k];
    return c;
}

Mat4R mat_mul(const Mat4R& a, const Mat4R& b) {
    Mat4R c{};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) {
            Rational s = 0;
            for (int l = 0; l < 4; ++l) s += a[r][l] * b[l][k];
            c[r][k] = s;
        }
    return c;
}

bool divisible_by(const Rational& x, long p) {
    return is_integer(x) && num(x) % p == 0;
}

long long quantize(double x) { return std::llround(x * 1e6); }

}  // namespace

HPoint fixed_point(const Eigen::Matrix2d& m) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double det = a * d - b * c;
    const double disc = (a + d) * (a + d) - 4.0 * det;
    if (disc >= -1e-12) throw std::invalid_argument("fixed_point: matrix is not elliptic");
    if (std::abs(c) < 1e-12)
        throw std::invalid_argument("fixed_point: fixed point at infinity");
    const double s = c > 0 ? 1.0 : -1.0;
    return uhp(Complex((a - d) / (2.0 * c), s * std::sqrt(-disc) / (2.0 * c)));
}

Complex elliptic_eigenvalue(const Eigen::Matrix2d& m, const HPoint& z) {
    const HPoint zu = to_uhp(z);
    const Complex j = m(1, 0) * zu.value + m(1, 1);
    return j / std::abs(j);
}

CMPoint make_cm_point(const QuatElement& t, bool normalize_sign) {
    if (reduced_norm(t) != 1)
        throw std::invalid_argument("make_cm_point: reduced norm must be 1");
    QuatElement s = t;
    Eigen::Matrix2d M = real_embedding(s);
    HPoint z = fixed_point(M);
    Complex ev = elliptic_eigenvalue(M, z);
    if (normalize_sign && ev.imag() < 0) {
        s = -s;
        M = -M;
        ev = -ev;
    }
    return CMPoint{s, M, z, ev};
}

CMLabel classify_pair(const CMPoint& a, const CMPoint& b, int exponent, double tol) {
    if (exponent != 1 && exponent != -1)
        throw std::invalid_argument("classify_pair: exponent must be +-1");
    // On the unit circle the inverse is the conjugate.
    const Complex target = exponent == 1 ? b.eigenvalue : std::conj(b.eigenvalue);
    if (std::abs(a.eigenvalue - target) < tol) return CMLabel::Heegner;
    if (std::abs(a.eigenvalue - std::conj(target)) < tol) return CMLabel::AntiHeegner;
    throw std::runtime_error("classify_pair: eigenvalues neither equal nor conjugate");
}

std::vector<CMPair> cm_pair_scan(const LatticeOrder& O, long p, int height) {
    if (p < 3 || !is_prime(Int(p)))
        throw std::invalid_argument("cm_pair_scan: p must be an odd prime");
    const auto units = enumerate_elements(O, 1, height);
    std::vector<QuatElement> torsion = torsion_elements(O, TorsionKind::Order4, height);
    {
        auto t6 = torsion_elements(O, TorsionKind::Order6, height);
        torsion.insert(torsion.end(), t6.begin(), t6.end());
    }

    std::vector<CMPair> out;
    std::set<std::tuple<int, long long, long long, long long, long long>> seen;

    for (const auto& t0 : torsion) {
        const CMPoint P = make_cm_point(t0);
        const Vec4R tc = O.coords_of(P.stab);
        for (const auto& u : units) {
            const Eigen::Matrix2d um = real_embedding(u);
            for (int e : {1, -1}) {
                // norm-1 units: inverse equals conjugate
                const QuatElement te = e == 1 ? P.stab : conjugate(P.stab);
                const QuatElement s = u * te * conjugate(u);
                const Vec4R sc = O.coords_of(s);
                int sigma = 0;
                bool plus = true, minus = true;
                for (int k = 0; k < 4; ++k) {
                    plus = plus && divisible_by(sc[k] - tc[k], p);
                    minus = minus && divisible_by(sc[k] + tc[k], p);
                }
                if (plus)
                    sigma = 1;
                else if (minus)
                    sigma = -1;
                else
                    continue;

                const HPoint w = moebius_act(um, P.fixed);
                // The exact stabilizer of w matched to the lift at the first
                // coordinate: sigma * u t^e u^{-1} = t mod p.
                const QuatElement matched = sigma == 1 ? s : -s;
                const Eigen::Matrix2d mm = real_embedding(matched);
                CMPoint Q{matched, mm, w, elliptic_eigenvalue(mm, w)};
                const CMLabel label = classify_pair(P, Q, 1);

                const Complex zu = P.fixed.value, wu = w.value;
                auto key = std::make_tuple(label == CMLabel::Heegner ? 0 : 1,
                                           quantize(zu.real()), quantize(zu.imag()),
                                           quantize(wu.real()), quantize(wu.imag()));
                if (!seen.insert(key).second) continue;
                out.push_back(CMPair{P, Q, u, e, sigma, p, label});
            }
        }
    }
    return out;
}

RepulsionSolution repulsion_solve(const QuatElement& t, const QuatElement& h_z,
                                  const QuatElement& h_w) {
    const Mat4R M1 = mat_sub(left_mult_matrix(t), right_mult_matrix(t));
    const Mat4R Phi = mat_mul(left_mult_matrix(h_z), right_mult_matrix(h_w));
    const Mat4R M2 = mat_mul(M1, Phi);

    std::vector<Vec4R> rows;
    for (int r = 0; r < 4; ++r) rows.push_back(M1[r]);
    for (int r = 0; r < 4; ++r) rows.push_back(M2[r]);
    const auto ker = kernel4(rows);

    RepulsionSolution sol;
    sol.dim = static_cast<int>(ker.size());
    const QuatAlgebra& alg = t.algebra();
    auto to_elem = [&](const Vec4R& v) {
        const auto prim = primitive_integer_vector(v);
        std::array<Rational, 4> c;
        for (int k = 0; k < 4; ++k) c[k] = Rational(prim[k]);
        return QuatElement(alg, c);
    };
    if (sol.dim == 1) {
        QuatElement g = to_elem(ker[0]);
        const QuatElement lhs = h_z * g * h_w;
        if (!(g * t == t * g) || !(lhs * t == t * lhs))
            throw std::runtime_error("repulsion_solve: kernel vector fails exact check");
        sol.g = g;
        sol.M = boost::multiprecision::abs(num(reduced_norm(g)));
    } else if (sol.dim >= 2) {
        for (const auto& v : ker) sol.centralizer.push_back(to_elem(v));
    }
    return sol;
}

HeckeSet hecke_elements(const LatticeOrder& O, const Int& m, int height) {
    if (m <= 0) throw std::invalid_argument("hecke_elements: norm must be positive");
    HeckeSet set;
    set.m = m;
    set.all = enumerate_elements(O, m, height);

    const Rational inv_m = Rational(1) / Rational(m);
    auto equivalent = [&](const QuatElement& e1, const QuatElement& e2) {
        // e1 = u e2 with u a norm-1 unit iff e1 conj(e2)/m is a unit of O.
        const QuatElement u = scalar_mul(inv_m, e1 * conjugate(e2));
        return O.contains(u) && reduced_norm(u) == 1;
    };
    for (const auto& e : set.all) {
        bool fresh = true;
        for (const auto& c : set.classes)
            if (equivalent(e, c)) {
                fresh = false;
                break;
            }
        if (fresh) set.classes.push_back(e);
    }

    const Int disc = discriminant(O.algebra());
    if (boost::multiprecision::gcd(m, disc) == 1) {
        set.expected = 1;
        for (const auto& [q, a] : factor(m)) {
            Int term = 1;
            for (int k = 0; k < a - 1; ++k) term *= q;
            set.expected *= term * (q + 1);
        }
    } else {
        set.expected = 0;
    }
    set.height_limited = set.expected != 0 && Int(set.classes.size()) != set.expected;
    return set;
}

Int submodule_count(long N, const Int& coprime_to) {
    if (N < 1 || N > 64) throw std::invalid_argument("submodule_count: N out of desk range");
    if (boost::multiprecision::gcd(Int(N), coprime_to) != 1)
        throw std::invalid_argument("submodule_count: N must be coprime to the discriminant");

    auto add_order = [&](long u, long v) { return N / std::gcd(std::gcd(u, v), N); };
    std::set<std::vector<int>> spans;
    std::vector<uint8_t> in_span(static_cast<size_t>(N) * N);
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b)
            for (long c = 0; c < N; ++c)
                for (long d = 0; d < N; ++d) {
                    std::fill(in_span.begin(), in_span.end(), 0);
                    long count = 0;
                    bool has_full_order = false;
                    for (long x = 0; x < N; ++x)
                        for (long y = 0; y < N; ++y) {
                            const long u = (x * a + y * c) % N;
                            const long v = (x * b + y * d) % N;
                            auto& cell = in_span[static_cast<size_t>(u) * N + v];
                            if (!cell) {
                                cell = 1;
                                ++count;
                                if (add_order(u, v) == N) has_full_order = true;
                            }
                        }
                    if (count != N || !has_full_order) continue;
                    std::vector<int> members;
                    for (long k = 0; k < N * N; ++k)
                        if (in_span[k]) members.push_back(static_cast<int>(k));
                    spans.insert(std::move(members));
                }
    return Int(spans.size());
}

bool hecke_tube_contains(const std::vector<QuatElement>& gs, double r, Complex z,
                         Complex w, const Normalization& norm) {
    const HPoint zu = to_uhp(disk(z));
    const HPoint wu = to_uhp(disk(w));
    for (const auto& g : gs) {
        const Rational n = reduced_norm(g);
        if (n <= 0) continue;
        const Eigen::Matrix2d M = real_embedding(g) / std::sqrt(to_double(n));
        if (dist(moebius_act(M, zu), wu) * norm.dist_scale() < r) return true;
    }
    return false;
}

RepulsionReport repulsion_experiment(const LatticeOrder& O, long p, double r, int height,
                                     const Normalization& norm) {
    const auto pairs = cm_pair_scan(O, p, height);
    std::vector<const CMPair*> heegner;
    for (const auto& pr : pairs)
        if (pr.label == CMLabel::Heegner) heegner.push_back(&pr);

    RepulsionReport rep;
    rep.heegner_pairs = static_cast<int>(heegner.size());
    const double tube_tol = 1e-6;

    for (size_t i = 0; i < heegner.size(); ++i)
        for (size_t j = i + 1; j < heegner.size(); ++j) {
            const CMPair &P = *heegner[i], &Q = *heegner[j];
            // restrict to pairs sharing the first coordinate and its
            // stabilizer lift exactly
            if (!(P.first.stab == Q.first.stab)) continue;
            if (dist(P.second.fixed, Q.second.fixed) * norm.dist_scale() >= r) continue;
            ++rep.close_pairs;

            const auto sol = repulsion_solve(P.first.stab, P.conjugator,
                                             conjugate(Q.conjugator));
            if (sol.dim == 2) {
                ++rep.dim2_cases;
                continue;
            }
            if (sol.dim == 0) {
                ++rep.dim0_cases;
                continue;
            }
            ++rep.dim1_cases;
            const QuatElement& g = *sol.g;
            if (*sol.M > rep.max_M) rep.max_M = *sol.M;

            // Exact witnesses: g commutes with the stabilizer, so it fixes
            // the base point; the three products below realize the tube
            // memberships (z, w_P), (z, w_Q), (w_Q, w_P) at norm M.
            const QuatElement h1 = P.conjugator * g;
            const QuatElement h2 = Q.conjugator * g;
            const QuatElement h3 = P.conjugator * g * conjugate(Q.conjugator);
            auto dz = [&](const HPoint& x) { return to_disk(x).value; };
            const Complex z0 = dz(P.first.fixed);
            const Complex wP = dz(P.second.fixed);
            const Complex wQ = dz(Q.second.fixed);
            bool ok = hecke_tube_contains({h1}, tube_tol, z0, wP, norm) &&
                      hecke_tube_contains({h2}, tube_tol, z0, wQ, norm) &&
                      hecke_tube_contains({h3}, tube_tol, wQ, wP, norm);
            rep.all_verified = rep.all_verified && ok;
        }
    return rep;
}

}  // namespace shimura
