#pragma once

#include <string>
#include <vector>

#include "shimura/curves.hpp"
#include "shimura/rational.hpp"

namespace shimura {

// Closed-form volume lower bounds for analytic curves in the product.
double ht_point_bound(double r, int multiplicity);  // 4 pi sinh^2(r/2) mult
double ht_diagonal_bound(double r, int degree);     // 8 pi sinh^2(r/4) n
double ht_hecke_bound(double r, int degree);        // 8 pi sinh^2(r/4) n

// Tube-volume growth ratio sinh(R/2)/sinh(r/2) between conjugate-diagonal
// collars of radii R > r.
double conj_ratio_bound(double r, double R);

struct BoundReport {
    double bound = 0;
    double measured = 0;
    double margin = 0;      // measured - bound: nonnegative when the lower
                            // bound holds
    double curvature = -4;  // normalization the measurement ran under
    double refinement_delta = 0;
    int mesh = 0;

    bool holds(double tol = 0.0) const { return margin >= -tol; }
};

BoundReport verify_point_bound(const ParamCurve& curve, Complex z0, Complex w0,
                               double r, const Normalization& norm,
                               double tol = 5e-4);
BoundReport verify_diagonal_bound(const ParamCurve& curve, double r,
                                  const Normalization& norm, double tol = 5e-4);
BoundReport verify_hecke_bound(const ParamCurve& curve,
                               const std::vector<Eigen::Matrix2d>& gs, double r,
                               const Normalization& norm, double tol = 5e-4);

struct ConjRatioReport {
    double bound;                  // sinh(R/2)/sinh(r/2)
    double ratio_curvature_minus1;
    double ratio_curvature_minus4;
    std::string matched;           // "-1", "-4", or "none"
    double tolerance;
};

// Measures the collar-volume ratio on the conjugate-diagonal graph under
// both metric normalizations and records which one realizes the bound.
ConjRatioReport verify_conj_ratio(double r, double R, double axial_halfwidth = 1.0,
                                  double tol = 0.02);

// Intersection-count budgets entering the genus comparison.  The plus budget
// charges a ball term at scale R and a degree-cubed term at the level
// displacement delta_p; the minus budget replaces the second term by the
// squared Hecke degrees below the cutoff.
double incidence_budget_plus(double vol_C, double c1, double c2, double R,
                             double d_cut, double delta_p);
double incidence_budget_minus(double vol_C, double c1, double c2, double R,
                              double d_cut, long p, const Int& disc);

// Degree of the norm-m correspondence (product of q^a + q^{a-1}); throws
// when m shares a factor with the discriminant.
Int hecke_degree(const Int& m, const Int& disc);

}  // namespace shimura
