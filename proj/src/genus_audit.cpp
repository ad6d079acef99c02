#include "shimura/genus_audit.hpp"

#include <fstream>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "shimura/hilbert.hpp"
#include "shimura/volume_bounds.hpp"

namespace shimura {

GroupOrders group_orders(long p) {
    if (!is_prime(Int(p))) throw std::invalid_argument("group_orders: p must be prime");
    const Int q = p;
    GroupOrders g;
    g.gl2 = (q * q - 1) * (q * q - q);
    g.pgl2 = g.gl2 / (q - 1);
    g.psl2 = g.pgl2 / boost::multiprecision::gcd(Int(2), q - 1);
    return g;
}

std::string default_catalog_path() {
#ifdef SHIMURA_DATA_DIR
    return std::string(SHIMURA_DATA_DIR) + "/catalog.json";
#else
    return "data/catalog.json";
#endif
}

std::vector<CurveInvariants> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    if (!doc.is_array()) throw std::runtime_error("catalog: top level must be an array");

    std::vector<CurveInvariants> out;
    for (size_t k = 0; k < doc.size(); ++k) {
        const auto& rec = doc[k];
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("catalog: record " + std::to_string(k) + ": " + why);
        };
        for (const char* field :
             {"discriminant", "algebra", "genus", "e2", "e3", "cross_check_height", "source"})
            if (!rec.contains(field)) fail(std::string("missing field ") + field);
        CurveInvariants c;
        c.discriminant = rec["discriminant"].get<long>();
        if (c.discriminant <= 1) fail("discriminant must exceed 1 (ramified algebra)");
        if (!rec["algebra"].is_array() || rec["algebra"].size() != 2)
            fail("algebra must be a pair");
        c.alpha = Rational(rec["algebra"][0].get<long>());
        c.beta = Rational(rec["algebra"][1].get<long>());
        c.genus = rec["genus"].get<int>();
        c.e2 = rec["e2"].get<int>();
        c.e3 = rec["e3"].get<int>();
        c.cross_check_height = rec["cross_check_height"].get<int>();
        c.source = rec["source"].get<std::string>();
        if (c.genus < 0 || c.e2 < 0 || c.e3 < 0) fail("negative invariant");
        if (orbifold_euler(c) >= 0) fail("orbifold Euler characteristic must be negative");
        out.push_back(std::move(c));
    }
    return out;
}

CurveInvariants catalog_lookup(long d, const std::string& path) {
    for (const auto& rec : load_catalog(path))
        if (rec.discriminant == d) return rec;
    throw std::runtime_error("catalog: discriminant " + std::to_string(d) +
                             " not in catalog");
}

Rational orbifold_euler(const CurveInvariants& rec) {
    return Rational(2) - Rational(2 * rec.genus) - Rational(rec.e2, 2) -
           Rational(2 * rec.e3, 3);
}

LevelCurve level_genus(long d, long p, int unit_search_height,
                       const std::string& catalog) {
    const auto rec = catalog_lookup(d, catalog);
    if (p % 2 == 0 || !is_prime(Int(p)))
        throw std::invalid_argument("level_genus: p must be an odd prime");
    if (d % p == 0) throw std::invalid_argument("level_genus: p must not divide d");

    const QuatAlgebra alg(rec.alpha, rec.beta);
    const auto O = maximalize(LatticeOrder::standard(alg));

    // the level structure must kill torsion
    for (auto kind : {TorsionKind::Order4, TorsionKind::Order6}) {
        const auto tors = torsion_elements(O, kind, 6);
        if (!congruence_filter(O, tors, p).empty())
            throw std::runtime_error("level_genus: torsion survives the level structure");
    }

    LevelCurve lc;
    lc.d = d;
    lc.p = p;
    lc.components = component_structure(O, p, unit_search_height);
    const auto orders = group_orders(p);
    lc.degree = lc.components == 1 ? orders.pgl2 : orders.psl2;

    const Rational chi_level = Rational(lc.degree) * orbifold_euler(rec);
    const Rational genus = Rational(1) - chi_level / 2;
    if (!is_integer(genus) || genus < 0)
        throw std::runtime_error("level_genus: non-integral genus, convention fault");
    lc.genus = to_int(genus);
    return lc;
}

Rational genus_lower(const Int& c_dot_f, const Int& genus_level) {
    if (c_dot_f <= 0 || genus_level <= 0)
        throw std::invalid_argument("genus_lower: positive inputs required");
    return Rational(c_dot_f * (genus_level - 1), 2);
}

double genus_upper(const Int& deg_alpha, const Int& g_v, double mult_cm) {
    if (deg_alpha < 1) throw std::invalid_argument("genus_upper: degree must be >= 1");
    return 1.0 + static_cast<double>(deg_alpha) * static_cast<double>(g_v - 1) +
           mult_cm / 2.0;
}

Int bidegree_identity(const Int& c_prime_dot_f, const Int& group_order) {
    if (c_prime_dot_f <= 0 || group_order <= 0)
        throw std::invalid_argument("bidegree_identity: positive inputs required");
    return c_prime_dot_f * group_order;
}

namespace {

long mod_pow(long base, long exp, long p) {
    long r = 1;
    base %= p;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
    }
    return r;
}

// scalar-class canonical form: first nonzero entry scaled to 1
long projective_key(Mat2Z m, long p) {
    long lead = 0;
    for (int r = 0; r < 2 && lead == 0; ++r)
        for (int c = 0; c < 2 && lead == 0; ++c) lead = m[r][c] % p;
    if (lead == 0) throw std::runtime_error("projective_key: zero matrix");
    const long inv = mod_pow((lead % p + p) % p, p - 2, p);
    long key = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            key = key * p + ((m[r][c] % p + p) % p) * inv % p;
    return key;
}

Mat2Z decode(long key, long p) {
    Mat2Z m;
    for (int r = 1; r >= 0; --r)
        for (int c = 1; c >= 0; --c) {
            m[r][c] = key % p;
            key /= p;
        }
    return m;
}

}  // namespace

NoriReport nori_check(const LatticeOrder& O, const std::vector<QuatElement>& gens,
                      long p) {
    const auto rep = split_mod_p(O, p);
    std::vector<Mat2Z> gmats;
    for (const auto& g : gens) {
        const Rational n = reduced_norm(g);
        if (!is_integer(n) || num(n) % p == 0)
            throw std::invalid_argument("nori_check: generator not invertible mod p");
        gmats.push_back(rep.image_of(O, g));
    }

    std::set<long> image;
    std::queue<long> todo;
    Mat2Z id{{{1, 0}, {0, 1}}};
    image.insert(projective_key(id, p));
    todo.push(projective_key(id, p));
    for (const auto& g : gmats) {
        const long k = projective_key(g, p);
        if (image.insert(k).second) todo.push(k);
    }
    while (!todo.empty()) {
        const Mat2Z x = decode(todo.front(), p);
        todo.pop();
        for (const auto& g : gmats) {
            const long k = projective_key(mat2z_mul(x, g, p), p);
            if (image.insert(k).second) todo.push(k);
        }
    }

    const auto orders = group_orders(p);
    NoriReport out;
    out.p = p;
    out.image_order = Int(image.size());
    out.matches_pgl2 = out.image_order == orders.pgl2;
    out.matches_psl2 = out.image_order == orders.psl2;
    out.surjective = out.matches_pgl2 || out.matches_psl2;
    return out;
}

ThresholdReport threshold_search(long k, long d, const BudgetConstants& constants,
                                 int unit_search_height, const std::string& catalog) {
    if (k < 1) throw std::invalid_argument("threshold_search: k must be >= 1");
    const auto rec = catalog_lookup(d, catalog);
    const QuatAlgebra alg(rec.alpha, rec.beta);
    const auto O = maximalize(LatticeOrder::standard(alg));
    const bool has_m1 = unit_norm_minus_one_exists(O, unit_search_height);
    const Rational chi = orbifold_euler(rec);
    const Int disc = d;

    ThresholdReport out;
    out.k = k;
    out.d = d;
    out.p_threshold = 0;
    out.found = false;
    out.constants = constants;
    out.lower_at_threshold = 0;
    out.upper_at_threshold = 0;
    out.convention =
        "projectivized unit group order; per-component covering degree from the "
        "component count";

    for (long p = 5; p <= constants.p_max; p += 2) {
        if (d % p == 0 || !is_prime(Int(p))) continue;
        const auto orders = group_orders(p);
        const int components = has_m1 && p % 4 == 3 ? 1 : 2;
        const Int deg = components == 1 ? orders.pgl2 : orders.psl2;
        const Rational genus = Rational(1) - Rational(deg) * chi / 2;
        if (!is_integer(genus))
            throw std::runtime_error("threshold_search: non-integral level genus");
        const Int g_p = to_int(genus);
        if (g_p <= 1) continue;

        const Int group = orders.pgl2;  // fixed projectivized convention
        const double lower = to_double(genus_lower(bidegree_identity(1, group), g_p));
        const double vol_c = static_cast<double>((2 * g_p - 2) * group);
        const double delta_p = displacement_lower(Rational(p) * p - 2);
        const double mult =
            incidence_budget_plus(vol_c, constants.c1, constants.c2, constants.R,
                                  constants.d_cut, delta_p) +
            incidence_budget_minus(vol_c, constants.c1, constants.c2, constants.R,
                                   constants.d_cut, p, disc);
        const double upper = genus_upper(group, Int(k - 1), mult);
        if (lower > upper) {
            out.p_threshold = p;
            out.found = true;
            out.lower_at_threshold = lower;
            out.upper_at_threshold = upper;
            break;
        }
    }
    return out;
}

}  // namespace shimura
