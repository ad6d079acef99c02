#include "shimura/volume_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace shimura {

namespace {
const double kPi = 3.14159265358979323846;

double sinh2(double x) {
    const double s = std::sinh(x);
    return s * s;
}
}  // namespace

double ht_point_bound(double r, int multiplicity) {
    if (r <= 0 || multiplicity < 1)
        throw std::invalid_argument("ht_point_bound: bad arguments");
    return 4.0 * kPi * sinh2(r / 2.0) * multiplicity;
}

double ht_diagonal_bound(double r, int degree) {
    if (r <= 0 || degree < 1)
        throw std::invalid_argument("ht_diagonal_bound: bad arguments");
    return 8.0 * kPi * sinh2(r / 4.0) * degree;
}

double ht_hecke_bound(double r, int degree) { return ht_diagonal_bound(r, degree); }

double conj_ratio_bound(double r, double R) {
    if (!(0 < r && r < R)) throw std::invalid_argument("conj_ratio_bound: need 0 < r < R");
    return std::sinh(R / 2.0) / std::sinh(r / 2.0);
}

namespace {

BoundReport report_from(double bound, const VolumeResult& vol, const Normalization& norm) {
    BoundReport rep;
    rep.bound = bound;
    rep.measured = vol.value;
    rep.margin = vol.value - bound;
    rep.curvature = norm.curvature;
    rep.refinement_delta = vol.refinement_delta;
    rep.mesh = vol.mesh;
    return rep;
}

}  // namespace

BoundReport verify_point_bound(const ParamCurve& curve, Complex z0, Complex w0,
                               double r, const Normalization& norm, double tol) {
    const auto vol = curve_volume(curve, region_ball(z0, w0, r, norm), norm, tol);
    return report_from(ht_point_bound(r, curve.multiplicity), vol, norm);
}

BoundReport verify_diagonal_bound(const ParamCurve& curve, double r,
                                  const Normalization& norm, double tol) {
    const auto vol = curve_volume(curve, region_diag_tube(r, norm), norm, tol);
    return report_from(ht_diagonal_bound(r, 1) * curve.multiplicity, vol, norm);
}

BoundReport verify_hecke_bound(const ParamCurve& curve,
                               const std::vector<Eigen::Matrix2d>& gs, double r,
                               const Normalization& norm, double tol) {
    if (gs.empty()) throw std::invalid_argument("verify_hecke_bound: empty branch list");
    const auto vol = curve_volume(curve, region_hecke_tube(gs, r, norm), norm, tol);
    const double bound =
        ht_hecke_bound(r, static_cast<int>(gs.size())) * curve.multiplicity;
    return report_from(bound, vol, norm);
}

ConjRatioReport verify_conj_ratio(double r, double R, double axial_halfwidth,
                                  double tol) {
    ConjRatioReport rep;
    rep.bound = conj_ratio_bound(r, R);
    rep.tolerance = tol;

    const ParamCurve curve = graph_conj();
    auto ratio_under = [&](double curvature) {
        Normalization norm;
        norm.curvature = curvature;
        const auto small =
            curve_volume(curve, region_conj_tube(r, axial_halfwidth, norm), norm);
        const auto big =
            curve_volume(curve, region_conj_tube(R, axial_halfwidth, norm), norm);
        return big.value / small.value;
    };
    rep.ratio_curvature_minus1 = ratio_under(-1.0);
    rep.ratio_curvature_minus4 = ratio_under(-4.0);

    const bool m1 = std::abs(rep.ratio_curvature_minus1 - rep.bound) < tol * rep.bound;
    const bool m4 = std::abs(rep.ratio_curvature_minus4 - rep.bound) < tol * rep.bound;
    rep.matched = m1 && !m4 ? "-1" : (!m1 && m4 ? "-4" : (m1 && m4 ? "both" : "none"));
    return rep;
}

Int hecke_degree(const Int& m, const Int& disc) {
    if (m <= 0) throw std::invalid_argument("hecke_degree: norm must be positive");
    if (boost::multiprecision::gcd(m, disc) != 1)
        throw std::invalid_argument("hecke_degree: norm shares a factor with the discriminant");
    Int deg = 1;
    for (const auto& [q, a] : factor(m)) {
        Int term = 1;
        for (int k = 0; k < a - 1; ++k) term *= q;
        deg *= term * (q + 1);
    }
    return deg;
}

double incidence_budget_plus(double vol_C, double c1, double c2, double R,
                             double d_cut, double delta_p) {
    if (vol_C <= 0 || R <= 0 || delta_p <= 0 || d_cut < 1)
        throw std::invalid_argument("incidence_budget_plus: bad arguments");
    return vol_C * (c1 / sinh2(R / 2.0) + c2 * d_cut * d_cut * d_cut / sinh2(delta_p / 2.0));
}

double incidence_budget_minus(double vol_C, double c1, double c2, double R,
                              double d_cut, long p, const Int& disc) {
    if (vol_C <= 0 || R <= 0 || p < 2 || d_cut < 1)
        throw std::invalid_argument("incidence_budget_minus: bad arguments");
    double deg_sum = 0;
    for (long m = 1; m < static_cast<long>(d_cut); ++m) {
        if (boost::multiprecision::gcd(Int(m), disc) != 1) continue;
        const double d = static_cast<double>(hecke_degree(Int(m), disc));
        deg_sum += d * d;
    }
    return vol_C * c1 / sinh2(R / 2.0) +
           c2 / std::sinh(std::log(static_cast<double>(p))) * deg_sum * vol_C;
}

}  // namespace shimura
