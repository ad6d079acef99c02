#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace shimura {

using Complex = std::complex<double>;

enum class Model { UHP, Disk };

struct HPoint {
    Complex value;
    Model model;
};

HPoint uhp(Complex z);
HPoint disk(Complex z);
HPoint to_disk(const HPoint& z);
HPoint to_uhp(const HPoint& z);

// (az+b)/(cz+d); requires det > 0 on the upper half-plane.
HPoint moebius_act(const Eigen::Matrix2d& M, const HPoint& z);

double dist(const HPoint& z, const HPoint& w);

// |(conj(w) - z)/(1 - z w)|^2; vanishes exactly on w = conj(z).  Disk model.
double psi(const HPoint& z, const HPoint& w);

double potential_S(const HPoint& z, const HPoint& w);

// Radially symmetric potential built from psi: constant c on
// [0, tanh^2(r/2)], h(s(psi)) on the middle band, slope 1 in s = -log(1-psi)
// beyond tanh^2(R/2).
struct PotentialF {
    double r;
    double R;
    double c;        // s(tanh^2(r/2)); e^c - 1 = sinh^2(r/2)
    double C;        // s(tanh^2(R/2))
    double h_at_C;   // h(C), from quadrature of h'

    PotentialF(double r, double R);

    double h_prime(double s) const;
    double h(double s) const;          // on [c, C]
    double value_s(double s) const;    // F as a function of s
    double operator()(const HPoint& z, const HPoint& w) const;

    // distance from psi(z,w) to the nearest seam value
    double seam_distance(const HPoint& z, const HPoint& w) const;
};

using Potential2 = std::function<double(Complex, Complex)>;

// Mixed Wirtinger second derivatives (d^2 / dzeta_a dzeta_b-bar) by central
// differences with one Richardson step; Hermitian by construction.
Eigen::Matrix2cd complex_hessian(const Potential2& phi, Complex z, Complex w, double step);

// Kahler form of the curvature -1 disk metric at (z, w): the standard
// comparison form for the potentials above.
Eigen::Matrix2cd omega_std(Complex z, Complex w);

struct LelongResult {
    double value;
    double convergence;  // |last - previous| over the sampling ladder
    bool singular;       // false when the ratio collapsed to ~0
};

// Directional liminf estimate of phi(x + eps u)/log(eps) over a geometric
// ladder of eps, minimized over sampled directions.
LelongResult lelong_estimate(const Potential2& phi, Complex z, Complex w);

}  // namespace shimura
