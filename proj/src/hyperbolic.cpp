#include "shimura/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace shimura {

HPoint uhp(Complex z) {
    if (z.imag() <= 0) throw std::invalid_argument("not in the upper half-plane");
    return {z, Model::UHP};
}

HPoint disk(Complex z) {
    if (std::abs(z) >= 1) throw std::invalid_argument("not in the unit disk");
    return {z, Model::Disk};
}

HPoint to_disk(const HPoint& z) {
    if (z.model == Model::Disk) return z;
    return {(z.value - Complex(0, 1)) / (z.value + Complex(0, 1)), Model::Disk};
}

HPoint to_uhp(const HPoint& z) {
    if (z.model == Model::UHP) return z;
    return {Complex(0, 1) * (Complex(1, 0) + z.value) / (Complex(1, 0) - z.value),
            Model::UHP};
}

HPoint moebius_act(const Eigen::Matrix2d& M, const HPoint& z) {
    if (M.determinant() <= 0)
        throw std::invalid_argument("orientation-reversing matrix on the half-plane");
    HPoint u = to_uhp(z);
    Complex img = (M(0, 0) * u.value + M(0, 1)) / (M(1, 0) * u.value + M(1, 1));
    HPoint out{img, Model::UHP};
    return z.model == Model::UHP ? out : to_disk(out);
}

double dist(const HPoint& z, const HPoint& w) {
    if (z.model != w.model) throw std::invalid_argument("model mismatch");
    if (z.model == Model::UHP) {
        double q = std::norm(z.value - w.value) / (2.0 * z.value.imag() * w.value.imag());
        return std::acosh(1.0 + q);
    }
    double t = std::abs((z.value - w.value) / (1.0 - z.value * std::conj(w.value)));
    return 2.0 * std::atanh(t);
}

double psi(const HPoint& zp, const HPoint& wp) {
    if (zp.model != Model::Disk || wp.model != Model::Disk)
        throw std::invalid_argument("psi is disk-native");
    Complex z = zp.value, w = wp.value;
    Complex denom = 1.0 - z * w;
    if (std::abs(denom) < 1e-14) throw std::domain_error("psi numerical singularity");
    double v = std::norm((std::conj(w) - z) / denom);
    return v;
}

double potential_S(const HPoint& z, const HPoint& w) { return -std::log1p(-psi(z, w)); }

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1,1]
const double kGx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                       -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                       0.7966664774136267,  0.9602898564975363};
const double kGw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                       0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                       0.2223810344533745, 0.1012285362903763};

}  // namespace

PotentialF::PotentialF(double r_, double R_) : r(r_), R(R_) {
    if (!(0 < r && r < R)) throw std::invalid_argument("need 0 < r < R");
    auto s_of = [](double rad) {
        double t = std::tanh(rad / 2.0);
        return -std::log1p(-t * t);
    };
    c = s_of(r);
    C = s_of(R);
    h_at_C = h(C);
}

double PotentialF::h_prime(double s) const {
    double A = std::expm1(c);
    double denom = 1.0 - std::sqrt(A / std::expm1(C));
    return (1.0 - std::sqrt(A / std::expm1(s))) / denom;
}

double PotentialF::h(double s) const {
    if (s < c || s > C + 1e-12) throw std::domain_error("h defined on the middle band");
    int panels = std::max(16, static_cast<int>(std::ceil((s - c) / 0.01)));
    double total = 0.0;
    double width = (s - c) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = c + p * width;
        for (int k = 0; k < 8; ++k) {
            double u = a + 0.5 * width * (1.0 + kGx[k]);
            total += 0.5 * width * kGw[k] * h_prime(u);
        }
    }
    return c + total;
}

double PotentialF::value_s(double s) const {
    if (s <= c) return c;
    if (s <= C) return h(s);
    return h_at_C + (s - C);
}

double PotentialF::operator()(const HPoint& z, const HPoint& w) const {
    return value_s(-std::log1p(-psi(z, w)));
}

double PotentialF::seam_distance(const HPoint& z, const HPoint& w) const {
    double p = psi(z, w);
    double tr = std::tanh(r / 2.0), tR = std::tanh(R / 2.0);
    return std::min(std::abs(p - tr * tr), std::abs(p - tR * tR));
}

namespace {

Eigen::Matrix2cd hessian_once(const Potential2& phi, Complex z, Complex w, double h) {
    auto f = [&](double x1, double y1, double x2, double y2) {
        return phi(Complex(z.real() + x1, z.imag() + y1),
                   Complex(w.real() + x2, w.imag() + y2));
    };
    double f0 = f(0, 0, 0, 0);
    auto second = [&](int a, int b) {
        // pure second derivative in coordinate a (0..3) when a == b
        double pt[4] = {0, 0, 0, 0};
        if (a == b) {
            pt[a] = h;
            double fp = f(pt[0], pt[1], pt[2], pt[3]);
            pt[a] = -h;
            double fm = f(pt[0], pt[1], pt[2], pt[3]);
            return (fp - 2.0 * f0 + fm) / (h * h);
        }
        double s = 0.0;
        for (int sa : {1, -1})
            for (int sb : {1, -1}) {
                double q[4] = {0, 0, 0, 0};
                q[a] = sa * h;
                q[b] = sb * h;
                s += sa * sb * f(q[0], q[1], q[2], q[3]);
            }
        return s / (4.0 * h * h);
    };
    double h11 = 0.25 * (second(0, 0) + second(1, 1));
    double h22 = 0.25 * (second(2, 2) + second(3, 3));
    Complex h12 = 0.25 * Complex(second(0, 2) + second(1, 3), second(0, 3) - second(1, 2));
    Eigen::Matrix2cd out;
    out(0, 0) = h11;
    out(1, 1) = h22;
    out(0, 1) = h12;
    out(1, 0) = std::conj(h12);
    return out;
}

}  // namespace

Eigen::Matrix2cd complex_hessian(const Potential2& phi, Complex z, Complex w, double step) {
    Eigen::Matrix2cd d1 = hessian_once(phi, z, w, step);
    Eigen::Matrix2cd d2 = hessian_once(phi, z, w, step / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

Eigen::Matrix2cd omega_std(Complex z, Complex w) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    double a = 1.0 - std::norm(z), b = 1.0 - std::norm(w);
    m(0, 0) = 2.0 / (a * a);
    m(1, 1) = 2.0 / (b * b);
    return m;
}

LelongResult lelong_estimate(const Potential2& phi, Complex z, Complex w) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::pair<Complex, Complex>> dirs;
    for (int k = 0; k < 4; ++k) {
        Complex u = std::polar(1.0, k * M_PI / 4.0 + 0.3);
        dirs.push_back({u, Complex(0, 0)});
        dirs.push_back({Complex(0, 0), u});
        dirs.push_back({u * inv_sqrt2, std::conj(u) * inv_sqrt2});
    }
    double best = 1e300, best_conv = 0;
    for (const auto& [u1, u2] : dirs) {
        double prev_slope = 0, slope = 0;
        double prev_val = 0, prev_log = 0;
        bool have = false;
        for (int k = 2; k <= 8; ++k) {
            double eps = std::pow(10.0, -double(k));
            double val = phi(z + eps * u1, w + eps * u2);
            double lg = std::log(eps);
            if (have) {
                prev_slope = slope;
                slope = (val - prev_val) / (lg - prev_log);
            }
            prev_val = val;
            prev_log = lg;
            have = true;
        }
        if (slope < best) {
            best = slope;
            best_conv = std::abs(slope - prev_slope);
        }
    }
    if (best < 0.05) return {0.0, best_conv, false};
    return {best, best_conv, true};
}

}  // namespace shimura
