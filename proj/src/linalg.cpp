#include "shimura/linalg.hpp"

#include <algorithm>
#include <boost/multiprecision/integer.hpp>

namespace shimura {

Rational det4(const Mat4R& m) {
    // Fraction-free is unnecessary at this size; plain elimination.
    Mat4R a = m;
    Rational det = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::optional<Vec4R> solve_row(const Mat4R& basis, const Vec4R& v) {
    // c * B = v  <=>  B^T c^T = v^T; eliminate on the augmented transpose.
    Rational aug[4][5];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) aug[r][c] = basis[c][r];
        aug[r][4] = v[r];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (aug[r][col] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        for (int c = 0; c <= 4; ++c) std::swap(aug[piv][c], aug[col][c]);
        Rational inv = Rational(1) / aug[col][col];
        for (int c = col; c <= 4; ++c) aug[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (int c = col; c <= 4; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    return Vec4R{aug[0][4], aug[1][4], aug[2][4], aug[3][4]};
}

std::vector<Vec4R> kernel4(const std::vector<Vec4R>& rows) {
    std::vector<Vec4R> a = rows;
    int m = static_cast<int>(a.size());
    std::array<int, 4> pivot_col_of_row{-1, -1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        Rational inv = Rational(1) / a[rank][col];
        for (int c = 0; c < 4; ++c) a[rank][c] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int c = 0; c < 4; ++c) a[r][c] -= f * a[rank][c];
        }
        pivot_col_of_row[rank] = col;
        ++rank;
    }
    std::array<bool, 4> is_pivot{false, false, false, false};
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col_of_row[r]] = true;
    std::vector<Vec4R> basis;
    for (int free = 0; free < 4; ++free) {
        if (is_pivot[free]) continue;
        Vec4R x{0, 0, 0, 0};
        x[free] = 1;
        for (int r = 0; r < rank; ++r) x[pivot_col_of_row[r]] = -a[r][free];
        basis.push_back(x);
    }
    return basis;
}

std::vector<std::array<Int, 4>> hnf_rows(std::vector<std::array<Int, 4>> rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::array<Int, 4>& r) {
                                  return r[0] == 0 && r[1] == 0 && r[2] == 0 && r[3] == 0;
                              }),
               rows.end());
    int m = static_cast<int>(rows.size());
    int top = 0;
    for (int col = 0; col < 4 && top < m; ++col) {
        // Euclidean reduction on the column below `top`.
        while (true) {
            int piv = -1;
            for (int r = top; r < m; ++r)
                if (rows[r][col] != 0 &&
                    (piv < 0 ||
                     boost::multiprecision::abs(rows[r][col]) <
                         boost::multiprecision::abs(rows[piv][col])))
                    piv = r;
            if (piv < 0) break;
            std::swap(rows[piv], rows[top]);
            bool clean = true;
            for (int r = top + 1; r < m; ++r) {
                if (rows[r][col] == 0) continue;
                Int q = rows[r][col] / rows[top][col];
                for (int c = 0; c < 4; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0)
            for (int c = 0; c < 4; ++c) rows[top][c] = -rows[top][c];
        // Reduce entries above the pivot.
        for (int r = 0; r < top; ++r) {
            Int q = rows[r][col] / rows[top][col];
            if (rows[r][col] % rows[top][col] < 0) q -= 1;
            if (q == 0) continue;
            for (int c = 0; c < 4; ++c) rows[r][c] -= q * rows[top][c];
        }
        ++top;
    }
    rows.resize(top);
    return rows;
}

std::array<Int, 4> primitive_integer_vector(const Vec4R& v) {
    Int d = 1;
    for (int k = 0; k < 4; ++k) d = boost::multiprecision::lcm(d, den(v[k]));
    std::array<Int, 4> w;
    Int g = 0;
    for (int k = 0; k < 4; ++k) {
        w[k] = num(v[k]) * (d / den(v[k]));
        g = boost::multiprecision::gcd(g, w[k]);
    }
    if (g > 0)
        for (auto& x : w) x /= g;
    for (int k = 0; k < 4; ++k) {
        if (w[k] > 0) break;
        if (w[k] < 0) {
            for (auto& x : w) x = -x;
            break;
        }
    }
    return w;
}

}  // namespace shimura
