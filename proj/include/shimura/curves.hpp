#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shimura/hyperbolic.hpp"

namespace shimura {

// Metric normalization for volumes and region radii.  Curvature -1 has
// density 4/(1-|u|^2)^2 and unit distance scale; curvature -4 halves
// distances and quarters areas.
struct Normalization {
    double curvature = -1.0;

    double density(Complex u) const;
    double dist_scale() const;  // multiply curvature -1 distances by this
};

// Local holomorphic parameterization t -> (z(t), w(t)) over a disk
// |t - center| < radius in the chart coordinate.
struct Chart {
    Complex center;
    double radius;
    std::function<Complex(Complex)> z;
    std::function<Complex(Complex)> w;
    std::function<Complex(Complex)> dz;
    std::function<Complex(Complex)> dw;
};

struct ParamCurve {
    std::string tag;
    std::vector<Chart> charts;
    int multiplicity = 1;  // declared analytically for zoo curves
};

using Region = std::function<bool(Complex z, Complex w)>;

struct VolumeResult {
    double value;
    double refinement_delta;
    int mesh;  // samples per axis at the final refinement
};

// Integral of the product Kahler density over the curve restricted to the
// region, by midpoint rule with dyadic refinement.
VolumeResult curve_volume(const ParamCurve& curve, const Region& region,
                          const Normalization& norm, double tol = 5e-4,
                          int initial_mesh = 64, int max_refinements = 6);

// --- curve zoo -------------------------------------------------------------

ParamCurve fiber_curve(Complex z0, double chart_radius = 0.999);
ParamCurve graph_neg_z(double chart_radius = 0.999);
// the curve t -> (t, t): as a subset of the product with conjugated second
// factor this is the conjugate-diagonal translate; psi on it vanishes
// exactly on the real axis.
ParamCurve graph_conj(double chart_radius = 0.999);
// t -> (t, g t) for a disk automorphism induced by a det > 0 real matrix.
ParamCurve hecke_translate(const Eigen::Matrix2d& M, double chart_radius = 0.999);

std::vector<ParamCurve> curve_zoo();

// --- regions ---------------------------------------------------------------

// product-metric ball {sqrt(d(z,z0)^2 + d(w,w0)^2) < r}
Region region_ball(Complex z0, Complex w0, double r, const Normalization& norm);
// diagonal tube {d(z,w) < r}
Region region_diag_tube(double r, const Normalization& norm);
// Hecke tube {exists g : d(g z, w) < r}
Region region_hecke_tube(const std::vector<Eigen::Matrix2d>& gs, double r,
                         const Normalization& norm);
// conjugate-diagonal tube {d(z, conj(w)) < rho} with an axial window
// |log|cayley(z)|| < axial_halfwidth to make volumes finite on curves that
// run along the tube core.
Region region_conj_tube(double rho, double axial_halfwidth, const Normalization& norm);

Region region_intersect(Region a, Region b);

}  // namespace shimura
