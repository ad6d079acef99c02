#include "shimura/curves.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace shimura {

double Normalization::density(Complex u) const {
    double a = 1.0 - std::norm(u);
    double base = 1.0 / (a * a);
    return curvature == -1.0 ? 4.0 * base : base;
}

double Normalization::dist_scale() const { return curvature == -1.0 ? 1.0 : 0.5; }

VolumeResult curve_volume(const ParamCurve& curve, const Region& region,
                          const Normalization& norm, double tol, int initial_mesh,
                          int max_refinements) {
    double prev = -1.0, cur = 0.0, delta = 0.0;
    int n = initial_mesh;
    for (int step = 0; step <= max_refinements; ++step, n *= 2) {
        cur = 0.0;
        for (const auto& chart : curve.charts) {
            double h = 2.0 * chart.radius / n;
            double cell = h * h;
            double acc = 0.0;
            for (int ix = 0; ix < n; ++ix) {
                double x = -chart.radius + (ix + 0.5) * h;
                for (int iy = 0; iy < n; ++iy) {
                    double y = -chart.radius + (iy + 0.5) * h;
                    if (x * x + y * y >= chart.radius * chart.radius) continue;
                    Complex t = chart.center + Complex(x, y);
                    Complex z = chart.z(t), w = chart.w(t);
                    if (std::norm(z) >= 1.0 || std::norm(w) >= 1.0) continue;
                    if (!region(z, w)) continue;
                    acc += (norm.density(z) * std::norm(chart.dz(t)) +
                            norm.density(w) * std::norm(chart.dw(t))) *
                           cell;
                }
            }
            cur += acc;
        }
        if (prev >= 0.0) {
            delta = std::abs(cur - prev);
            double scale = std::max(1.0, std::abs(cur));
            if (delta < tol * scale) return {cur, delta, n};
        }
        prev = cur;
    }
    return {cur, delta, n / 2};
}

ParamCurve fiber_curve(Complex z0, double chart_radius) {
    Chart ch{Complex(0, 0), chart_radius,
             [z0](Complex) { return z0; },
             [](Complex t) { return t; },
             [](Complex) { return Complex(0, 0); },
             [](Complex) { return Complex(1, 0); }};
    return ParamCurve{"fiber", {ch}, 1};
}

ParamCurve graph_neg_z(double chart_radius) {
    Chart ch{Complex(0, 0), chart_radius,
             [](Complex t) { return t; },
             [](Complex t) { return -t; },
             [](Complex) { return Complex(1, 0); },
             [](Complex) { return Complex(-1, 0); }};
    return ParamCurve{"graph_neg_z", {ch}, 1};
}

ParamCurve graph_conj(double chart_radius) {
    Chart ch{Complex(0, 0), chart_radius,
             [](Complex t) { return t; },
             [](Complex t) { return t; },
             [](Complex) { return Complex(1, 0); },
             [](Complex) { return Complex(1, 0); }};
    return ParamCurve{"graph_conj", {ch}, 1};
}

namespace {

// Disk automorphism conjugated from a det > 0 half-plane matrix.
std::array<Complex, 4> disk_coefficients(const Eigen::Matrix2d& M) {
    if (M.determinant() <= 0) throw std::invalid_argument("need det > 0");
    Complex a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    const Complex i(0, 1);
    // cayley * M * cayley^{-1} with cayley = [[1, -i], [1, i]]
    return {(a + d) + (b - c) * i, (a - d) - (b + c) * i,
            (a - d) + (b + c) * i, (a + d) - (b - c) * i};
}

}  // namespace

ParamCurve hecke_translate(const Eigen::Matrix2d& M, double chart_radius) {
    auto co = disk_coefficients(M);
    auto w = [co](Complex t) { return (co[0] * t + co[1]) / (co[2] * t + co[3]); };
    auto dw = [co](Complex t) {
        Complex den = co[2] * t + co[3];
        return (co[0] * co[3] - co[1] * co[2]) / (den * den);
    };
    return ParamCurve{"hecke_translate",
                      {Chart{Complex(0, 0), chart_radius, [](Complex t) { return t; }, w,
                             [](Complex) { return Complex(1, 0); }, dw}},
                      1};
}

std::vector<ParamCurve> curve_zoo() {
    Eigen::Matrix2d M;
    M << 2, 1, 1, 1;
    return {fiber_curve(Complex(0, 0)), graph_neg_z(), graph_conj(), hecke_translate(M)};
}

Region region_ball(Complex z0, Complex w0, double r, const Normalization& norm) {
    double s = norm.dist_scale();
    return [=](Complex z, Complex w) {
        double d1 = s * dist(disk(z), disk(z0));
        double d2 = s * dist(disk(w), disk(w0));
        return d1 * d1 + d2 * d2 < r * r;
    };
}

Region region_diag_tube(double r, const Normalization& norm) {
    double s = norm.dist_scale();
    return [=](Complex z, Complex w) { return s * dist(disk(z), disk(w)) < r; };
}

Region region_hecke_tube(const std::vector<Eigen::Matrix2d>& gs, double r,
                         const Normalization& norm) {
    double s = norm.dist_scale();
    return [=](Complex z, Complex w) {
        for (const auto& g : gs) {
            HPoint gz = moebius_act(g, disk(z));
            if (s * dist(gz, disk(w)) < r) return true;
        }
        return false;
    };
}

Region region_conj_tube(double rho, double axial_halfwidth, const Normalization& norm) {
    double s = norm.dist_scale();
    return [=](Complex z, Complex w) {
        if (s * dist(disk(z), disk(std::conj(w))) >= rho) return false;
        Complex zu = Complex(0, 1) * (Complex(1, 0) + z) / (Complex(1, 0) - z);
        double axial = std::log(std::abs(zu));
        return std::abs(axial) < axial_halfwidth;
    };
}

Region region_intersect(Region a, Region b) {
    return [a, b](Complex z, Complex w) { return a(z, w) && b(z, w); };
}

}  // namespace shimura
