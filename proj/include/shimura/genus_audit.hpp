#pragma once

#include <string>
#include <vector>

#include "shimura/arith_group.hpp"
#include "shimura/rational.hpp"

namespace shimura {

struct GroupOrders {
    Int gl2;   // (p^2 - 1)(p^2 - p)
    Int pgl2;  // gl2 / (p - 1)
    Int psl2;  // pgl2 / gcd(2, p - 1)
};

GroupOrders group_orders(long p);

// One record of the bundled external invariant table; genus is literature
// data, (e2, e3) is re-derived by the class-count enumeration.
struct CurveInvariants {
    long discriminant;
    Rational alpha;
    Rational beta;  // presentation used for the cross-checks
    int genus;
    int e2;
    int e3;
    int cross_check_height;
    std::string source;
};

std::string default_catalog_path();
std::vector<CurveInvariants> load_catalog(const std::string& path);
CurveInvariants catalog_lookup(long d, const std::string& path = default_catalog_path());

// 2 - 2g - e2/2 - 2 e3/3; negative for every record (hyperbolic).
Rational orbifold_euler(const CurveInvariants& rec);

struct LevelCurve {
    long d;
    long p;
    int components;
    Int degree;  // covering degree per component
    Int genus;   // genus per component
};

// Genus of the level-p curve from multiplicativity of the orbifold Euler
// characteristic; integrality of the result audits the convention stack.
LevelCurve level_genus(long d, long p, int unit_search_height = 8,
                       const std::string& catalog = default_catalog_path());

// (1/2) (C.F) (g - 1), also a quarter of C.K when K = (2g-2) F.
Rational genus_lower(const Int& c_dot_f, const Int& genus_level);

// 1 + deg (g_V - 1) + mult/2.
double genus_upper(const Int& deg_alpha, const Int& g_v, double mult_cm);

// Minimal bidegree growth model: the product of the base intersection
// number with the group order.
Int bidegree_identity(const Int& c_prime_dot_f, const Int& group_order);

struct NoriReport {
    long p;
    Int image_order;
    bool matches_pgl2;
    bool matches_psl2;
    bool surjective;  // image fills one of the two projective orders
};

// Deterministic breadth-first closure of the projectivized mod-p images of
// the generators; norm -1 generators are allowed and can enlarge the image
// beyond the determinant-1 part.
NoriReport nori_check(const LatticeOrder& O, const std::vector<QuatElement>& gens,
                      long p);

struct BudgetConstants {
    double c1 = 1.0;
    double c2 = 1.0;
    double R = 6.0;
    double d_cut = 6.0;
    long p_max = 20000;
};

struct ThresholdReport {
    long k;
    long d;
    long p_threshold;  // 0 when the scan range is exhausted
    bool found;
    BudgetConstants constants;
    double lower_at_threshold;
    double upper_at_threshold;
    std::string convention;
};

// Smallest prime in range where the genus lower bound (minimal bidegree
// model, projectivized group order) strictly exceeds the upper bound with
// target genus k-1 and the parameterized incidence budgets.  The report is
// conditional on the echoed constants.
ThresholdReport threshold_search(long k, long d, const BudgetConstants& constants = {},
                                 int unit_search_height = 8,
                                 const std::string& catalog = default_catalog_path());

}  // namespace shimura
