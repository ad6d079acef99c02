#include "shimura/repr.hpp"

#include <cmath>
#include <stdexcept>

#include "shimura/hilbert.hpp"

namespace shimura {

QuadExt qe_add(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
QuadExt qe_sub(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
QuadExt qe_mul(const QuadExt& x, const QuadExt& y, const Rational& alpha) {
    return {x.a * y.a + alpha * x.b * y.b, x.a * y.b + x.b * y.a};
}

Mat2K mat2k_mul(const Mat2K& x, const Mat2K& y, const Rational& alpha) {
    Mat2K z;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            z[r][c] = qe_add(qe_mul(x[r][0], y[0][c], alpha), qe_mul(x[r][1], y[1][c], alpha));
    return z;
}

QuadExt mat2k_det(const Mat2K& m, const Rational& alpha) {
    return qe_sub(qe_mul(m[0][0], m[1][1], alpha), qe_mul(m[0][1], m[1][0], alpha));
}

QuadExt mat2k_trace(const Mat2K& m) { return qe_add(m[0][0], m[1][1]); }

Mat2K left_regular_rep(const QuatElement& x) {
    const Rational& beta = x.algebra().beta;
    const Rational &a = x[0], &b = x[1], &c = x[2], &d = x[3];
    Mat2K m;
    m[0][0] = {a, b};
    m[0][1] = {beta * c, beta * d};
    m[1][0] = {c, -d};
    m[1][1] = {a, -b};
    return m;
}

Eigen::Matrix2d real_embedding(const QuatElement& x) {
    Rational alpha = x.algebra().alpha;
    Rational beta = x.algebra().beta;
    Rational a = x[0], b = x[1], c = x[2], d = x[3];
    if (alpha < 0) {
        // Swap generators: (i, j) -> (j, i) carries (alpha,beta) to
        // (beta,alpha) and negates the ij coefficient.
        std::swap(alpha, beta);
        std::swap(b, c);
        d = -d;
    }
    if (alpha < 0) throw std::domain_error("real embedding needs an indefinite algebra");
    double s = std::sqrt(to_double(alpha));
    Eigen::Matrix2d m;
    m(0, 0) = to_double(a) + to_double(b) * s;
    m(0, 1) = to_double(beta) * (to_double(c) + to_double(d) * s);
    m(1, 0) = to_double(c) - to_double(d) * s;
    m(1, 1) = to_double(a) - to_double(b) * s;
    return m;
}

Mat2Z mat2z_mul(const Mat2Z& x, const Mat2Z& y, long p) {
    Mat2Z z{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            long s = 0;
            for (int k = 0; k < 2; ++k) s = (s + x[r][k] * y[k][c]) % p;
            z[r][c] = ((s % p) + p) % p;
        }
    return z;
}

namespace {

long mod_of_rational(const Rational& r, long p) {
    Int n = num(r) % p, d = den(r) % p;
    if (d == 0) throw std::domain_error("denominator not invertible mod p");
    long nn = static_cast<long>((n + p) % p);
    long dd = static_cast<long>((d + p) % p);
    // Fermat inverse
    long inv = 1, base = dd, e = p - 2;
    while (e) {
        if (e & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return (nn * inv) % p;
}

long tr_mod(const Mat2Z& m, long p) { return (m[0][0] + m[1][1]) % p; }

}  // namespace

Mat2Z SplitRep::image_of(const LatticeOrder& O, const QuatElement& x) const {
    auto coords = O.coords_of(x);
    Mat2Z out{};
    for (int k = 0; k < 4; ++k) {
        long ck = mod_of_rational(coords[k], p);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                out[r][c] = (out[r][c] + ck * images[k][r][c]) % p;
    }
    return out;
}

SplitRep split_mod_p(const LatticeOrder& O, long p) {
    if (p == 2 || !is_prime(Int(p))) throw std::invalid_argument("need an odd prime");
    if (discriminant(O.algebra()) % p == 0)
        throw std::invalid_argument("algebra is ramified at p");
    long alpha = mod_of_rational(O.algebra().alpha, p);
    long beta = mod_of_rational(O.algebra().beta, p);

    auto find_root = [&](long target, const Mat2Z* anti) -> Mat2Z {
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b)
                for (long c = 0; c < p; ++c) {
                    if (((a * a + b * c) % p + p) % p != target) continue;
                    Mat2Z m{{{a, b}, {c, ((p - a) % p)}}};
                    if (anti && tr_mod(mat2z_mul(*anti, m, p), p) != 0) continue;
                    return m;
                }
        throw std::domain_error("no trace-zero square root mod p");
    };

    Mat2Z I = find_root(alpha, nullptr);
    Mat2Z J = find_root(beta, &I);
    Mat2Z IJ = mat2z_mul(I, J, p);
    Mat2Z one{{{1, 0}, {0, 1}}};
    std::array<Mat2Z, 4> gen{one, I, J, IJ};

    SplitRep rep;
    rep.p = p;
    for (int k = 0; k < 4; ++k) {
        Mat2Z img{};
        for (int g = 0; g < 4; ++g) {
            long ck = mod_of_rational(O.basis()[k][g], p);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) img[r][c] = (img[r][c] + ck * gen[g][r][c]) % p;
        }
        rep.images[k] = img;
    }
    return rep;
}

}  // namespace shimura
