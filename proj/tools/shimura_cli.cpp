#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "shimura/cm_hecke.hpp"
#include "shimura/config.hpp"
#include "shimura/genus_audit.hpp"
#include "shimura/hilbert.hpp"
#include "shimura/volume_bounds.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using nlohmann::json;
using namespace shimura;

std::string golden_root() {
#ifdef SHIMURA_DATA_DIR
    return std::string(SHIMURA_DATA_DIR) + "/golden";
#else
    return "data/golden";
#endif
}

struct Emitter {
    RunConfig cfg;
    bool csv = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void emit(const std::string& op, const json& data) const {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (csv) {
            for (const auto& [k, v] : data.items())
                std::cout << op << "," << k << "," << v.dump() << "\n";
            return;
        }
        json out;
        out["tool_version"] = kToolVersion;
        out["op"] = op;
        out["config"] = config_echo(cfg);
        out["timing_ms"] = ms;
        out["data"] = data;
        std::cout << out.dump() << "\n";
    }
};

LatticeOrder config_order(const RunConfig& cfg) {
    return maximalize(LatticeOrder::standard(QuatAlgebra(cfg.alpha, cfg.beta)));
}

json bound_report_json(const BoundReport& r) {
    return json{{"bound", r.bound},
                {"measured", r.measured},
                {"margin", r.margin},
                {"curvature", r.curvature},
                {"refinement_delta", r.refinement_delta},
                {"mesh", r.mesh},
                {"tolerance_tag", "quadrature"}};
}

// --- golden suites ----------------------------------------------------------

json golden_compute(const std::string& suite, const RunConfig& cfg) {
    if (suite == "cm_scan") {
        auto O = config_order(cfg);
        auto pairs = cm_pair_scan(O, 5, cfg.height("scan"));
        int h = 0, a = 0;
        for (const auto& pr : pairs) (pr.label == CMLabel::Heegner ? h : a)++;
        return json{{"pairs", pairs.size()}, {"heegner", h}, {"anti", a}};
    }
    if (suite == "repulsion") {
        auto O = config_order(cfg);
        auto rep = repulsion_experiment(O, 5, 1.0, cfg.height("scan"), cfg.norm());
        return json{{"heegner_pairs", rep.heegner_pairs},
                    {"close_pairs", rep.close_pairs},
                    {"dim0", rep.dim0_cases},
                    {"dim1", rep.dim1_cases},
                    {"dim2", rep.dim2_cases},
                    {"max_M", rep.max_M.str()},
                    {"all_verified", rep.all_verified}};
    }
    if (suite == "hecke") {
        auto O = config_order(cfg);
        json out;
        for (long m : {5, 7}) {
            auto h = hecke_elements(O, m, cfg.height("hecke"));
            out["m" + std::to_string(m)] = h.classes.size();
        }
        return out;
    }
    if (suite == "threshold") {
        auto rep = threshold_search(2, 6, cfg.constants);
        return json{{"found", rep.found}, {"p_threshold", rep.p_threshold}};
    }
    throw std::runtime_error("unknown golden suite: " + suite);
}

int golden_manage(const std::string& mode, const std::string& suite, Emitter& em) {
    const auto dir = std::filesystem::path(golden_root()) / suite;
    const auto file = dir / "default.json";
    const json current = golden_compute(suite, em.cfg);

    if (mode == "record") {
        std::filesystem::create_directories(dir);
        std::ofstream(file) << current.dump(2) << "\n";
        em.emit("golden.record", json{{"suite", suite}, {"file", file.string()}});
        return 0;
    }
    std::ifstream in(file);
    if (!in) throw std::runtime_error("golden: no recorded file " + file.string());
    json frozen;
    in >> frozen;
    const bool ok = frozen == current;
    json diff;
    for (const auto& [k, v] : current.items())
        if (!frozen.contains(k) || frozen[k] != v)
            diff[k] = {{"frozen", frozen.value(k, json())}, {"current", v}};
    em.emit("golden.check",
            json{{"suite", suite}, {"match", ok}, {"diff", diff}});
    return ok ? 0 : 1;
}

// --- selftest ----------------------------------------------------------------

int selftest(bool quick, Emitter& em) {
    std::mt19937 rng(em.cfg.seed);
    std::uniform_int_distribution<int> coef(-20, 20);
    const int samples = quick ? 200 : 1000;
    int failures = 0;

    for (auto params : {std::pair<long, long>{-1, 3}, {-1, -1}}) {
        QuatAlgebra alg{Rational(params.first), Rational(params.second)};
        auto rnd = [&] {
            return QuatElement(
                alg, {Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng)),
                      Rational(coef(rng))});
        };
        for (int k = 0; k < samples; ++k) {
            auto x = rnd(), y = rnd();
            if (!(reduced_norm(x * y) == reduced_norm(x) * reduced_norm(y))) ++failures;
            if (!(x * conjugate(x) == QuatElement::scalar(alg, reduced_norm(x)))) ++failures;
            if (!(reduced_trace(x) == reduced_trace(conjugate(x)))) ++failures;
            if (!(conjugate(x * y) == conjugate(y) * conjugate(x))) ++failures;
        }
    }
    em.emit("selftest", json{{"samples_per_algebra", samples},
                             {"failures", failures},
                             {"tolerance_tag", "exact"}});
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quaternionic Shimura curve toolkit"};
    app.require_subcommand(1);

    std::string config_path, suite = "cm_scan", curve_tag = "fiber", bound_tag = "point",
                golden_mode;
    long p = 5, d = 6, k = 2, norm_m = 5, sub_n = 5;
    long long a_sym = -1, b_sym = 3;
    std::string place = "2";
    int height = -1;
    long enum_norm = 1;
    double r = 0.3, R = 0.6;
    bool quick = false, csv = false;
    unsigned seed_flag = 0;
    int threads = 0;

    app.add_option("--config", config_path, "JSON config file");
    app.add_flag("--json", "JSON lines output (default)");
    app.add_flag("--csv", csv, "CSV output");
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--seed", seed_flag, "RNG seed override");

    auto* alg_cmd = app.add_subcommand("algebra", "algebra invariants");
    auto* alg_ram = alg_cmd->add_subcommand("ramified", "ramified places and discriminant");
    auto* alg_sym = alg_cmd->add_subcommand("symbol", "local symbol at one place");
    alg_sym->add_option("--a", a_sym);
    alg_sym->add_option("--b", b_sym);
    alg_sym->add_option("--place", place, "prime or 'real'");

    auto* ord_cmd = app.add_subcommand("order", "maximal order computation");
    ord_cmd->add_subcommand("maximal", "maximalize the standard order");

    auto* grp_cmd = app.add_subcommand("group", "unit group operations");
    auto* grp_enum = grp_cmd->add_subcommand("enumerate", "box enumeration by norm");
    grp_enum->add_option("--norm", enum_norm);
    grp_enum->add_option("--height", height);
    auto* grp_tr = grp_cmd->add_subcommand("mintrace", "minimum congruence-kernel trace");
    grp_tr->add_option("--p", p);
    grp_tr->add_option("--height", height);
    auto* grp_cl = grp_cmd->add_subcommand("classes", "elliptic class counts");
    grp_cl->add_option("--height", height);
    auto* grp_co = grp_cmd->add_subcommand("components", "level curve component count");
    grp_co->add_option("--p", p);

    auto* cm_cmd = app.add_subcommand("cm", "CM pair scan and repulsion");
    auto* cm_scan = cm_cmd->add_subcommand("scan", "classify CM pairs at level p");
    cm_scan->add_option("--p", p);
    cm_scan->add_option("--height", height);
    auto* cm_rep = cm_cmd->add_subcommand("repulsion", "repulsion experiment");
    cm_rep->add_option("--p", p);
    cm_rep->add_option("--r", r);
    cm_rep->add_option("--height", height);

    auto* hk_cmd = app.add_subcommand("hecke", "correspondence degrees");
    auto* hk_cl = hk_cmd->add_subcommand("classes", "norm-m classes modulo left units");
    hk_cl->add_option("--m", norm_m);
    hk_cl->add_option("--height", height);
    auto* hk_sub = hk_cmd->add_subcommand("submodules", "cyclic submodule count");
    hk_sub->add_option("--N", sub_n);

    auto* vol_cmd = app.add_subcommand("volume", "volume bound harnesses");
    auto* vol_ver = vol_cmd->add_subcommand("verify", "verify one bound on one curve");
    vol_ver->add_option("--curve", curve_tag, "fiber|graph_neg_z|graph_conj");
    vol_ver->add_option("--bound", bound_tag, "point|diag|hecke|conj");
    vol_ver->add_option("--r", r);
    vol_ver->add_option("--R", R);
    vol_ver->add_option("--m", norm_m, "norm for the hecke bound");

    auto* aud_cmd = app.add_subcommand("audit", "genus audit");
    auto* aud_or = aud_cmd->add_subcommand("orders", "finite group orders");
    aud_or->add_option("--p", p);
    aud_cmd->add_subcommand("catalog", "bundled curve invariants");
    auto* aud_ge = aud_cmd->add_subcommand("genus", "level curve genus");
    aud_ge->add_option("--d", d);
    aud_ge->add_option("--p", p);
    auto* aud_no = aud_cmd->add_subcommand("nori", "projective image closure");
    aud_no->add_option("--d", d);
    aud_no->add_option("--p", p);
    aud_no->add_option("--height", height);
    auto* aud_th = aud_cmd->add_subcommand("threshold", "genus bound crossover scan");
    aud_th->add_option("--k", k);
    aud_th->add_option("--d", d);

    auto* self_cmd = app.add_subcommand("selftest", "exact arithmetic invariant suite");
    self_cmd->add_flag("--quick", quick);

    auto* gold_cmd = app.add_subcommand("golden", "golden-file regression management");
    gold_cmd->add_option("mode", golden_mode, "record|check")->required();
    gold_cmd->add_option("--suite", suite, "cm_scan|repulsion|hecke|threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Emitter em;
    try {
        em.cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (seed_flag != 0) em.cfg.seed = seed_flag;
        if (threads > 0) em.cfg.threads = threads;
        em.csv = csv;
        auto h = [&](const std::string& name) {
            return height > 0 ? height : em.cfg.height(name);
        };

        if (*alg_ram) {
            QuatAlgebra alg(em.cfg.alpha, em.cfg.beta);
            json places = json::array();
            for (const auto& v : ramified_places(alg))
                places.push_back(v.finite ? json(v.q.str()) : json("real"));
            em.emit("algebra.ramified", json{{"discriminant", discriminant(alg).str()},
                                             {"places", places},
                                             {"tolerance_tag", "exact"}});
        } else if (*alg_sym) {
            const Place v = place == "real" ? Place::real() : Place::prime(Int(place));
            em.emit("algebra.symbol",
                    json{{"a", a_sym},
                         {"b", b_sym},
                         {"place", place},
                         {"symbol", hilbert_symbol(Rational(a_sym), Rational(b_sym), v)},
                         {"tolerance_tag", "exact"}});
        } else if (*ord_cmd) {
            auto O = config_order(em.cfg);
            json basis = json::array();
            for (int i = 0; i < 4; ++i) basis.push_back(O.basis_element(i).str());
            em.emit("order.maximal",
                    json{{"basis", basis},
                         {"reduced_discriminant", O.reduced_discriminant().str()},
                         {"maximal", O.is_maximal()},
                         {"tolerance_tag", "exact"}});
        } else if (*grp_enum) {
            auto O = config_order(em.cfg);
            auto elems = enumerate_elements(O, Int(enum_norm), h("units"));
            json sample = json::array();
            for (size_t i = 0; i < std::min<size_t>(5, elems.size()); ++i)
                sample.push_back(elems[i].str());
            em.emit("group.enumerate", json{{"norm", enum_norm},
                                            {"height", h("units")},
                                            {"count", elems.size()},
                                            {"sample", sample},
                                            {"tolerance_tag", "exact"}});
        } else if (*grp_tr) {
            auto O = config_order(em.cfg);
            auto m = min_congruence_trace(O, p, h("mintrace"));
            json data{{"p", p}, {"height", h("mintrace")}, {"tolerance_tag", "exact"}};
            data["min_abs_trace"] = m ? json(m->str()) : json();
            if (m) data["displacement_lower"] = displacement_lower(Rational(*m));
            em.emit("group.mintrace", data);
        } else if (*grp_cl) {
            auto O = config_order(em.cfg);
            auto c = elliptic_class_counts(O, h("units"));
            em.emit("group.classes", json{{"order4", c.first},
                                          {"order6", c.second},
                                          {"height", h("units")},
                                          {"tolerance_tag", "exact"}});
        } else if (*grp_co) {
            auto O = config_order(em.cfg);
            em.emit("group.components",
                    json{{"p", p},
                         {"components", component_structure(O, p, h("units"))},
                         {"tolerance_tag", "exact"}});
        } else if (*cm_scan) {
            em.emit("cm.scan", golden_compute("cm_scan", em.cfg));
        } else if (*cm_rep) {
            auto O = config_order(em.cfg);
            auto rep = repulsion_experiment(O, p, r, h("scan"), em.cfg.norm());
            em.emit("cm.repulsion", json{{"p", p},
                                         {"r", r},
                                         {"heegner_pairs", rep.heegner_pairs},
                                         {"close_pairs", rep.close_pairs},
                                         {"dim0", rep.dim0_cases},
                                         {"dim1", rep.dim1_cases},
                                         {"dim2", rep.dim2_cases},
                                         {"max_M", rep.max_M.str()},
                                         {"all_verified", rep.all_verified},
                                         {"tolerance", 1e-6}});
        } else if (*hk_cl) {
            auto O = config_order(em.cfg);
            auto hs = hecke_elements(O, Int(norm_m), h("hecke"));
            em.emit("hecke.classes", json{{"m", norm_m},
                                          {"classes", hs.classes.size()},
                                          {"expected", hs.expected.str()},
                                          {"height_limited", hs.height_limited},
                                          {"tolerance_tag", "exact"}});
        } else if (*hk_sub) {
            em.emit("hecke.submodules", json{{"N", sub_n},
                                             {"count", submodule_count(sub_n).str()},
                                             {"tolerance_tag", "exact"}});
        } else if (*vol_ver) {
            if (bound_tag == "conj") {
                auto rep = verify_conj_ratio(r, R);
                em.emit("volume.verify",
                        json{{"bound", rep.bound},
                             {"ratio_curvature_minus1", rep.ratio_curvature_minus1},
                             {"ratio_curvature_minus4", rep.ratio_curvature_minus4},
                             {"matched", rep.matched},
                             {"tolerance", rep.tolerance}});
            } else {
                const Normalization nm = em.cfg.norm();
                ParamCurve curve = fiber_curve({0.1, 0.05});
                Complex z0(0.1, 0.05), w0(0, 0);
                if (curve_tag == "graph_neg_z") {
                    curve = graph_neg_z();
                    z0 = {0.1, 0.0};
                    w0 = {-0.1, 0.0};
                } else if (curve_tag == "graph_conj") {
                    curve = graph_conj();
                    z0 = w0 = {0.1, 0.0};
                }
                BoundReport rep;
                if (bound_tag == "point")
                    rep = verify_point_bound(curve, z0, w0, r, nm);
                else if (bound_tag == "diag")
                    rep = verify_diagonal_bound(curve, r, nm);
                else if (bound_tag == "hecke") {
                    auto O = config_order(em.cfg);
                    std::vector<Eigen::Matrix2d> gs;
                    for (const auto& g : hecke_elements(O, Int(norm_m), em.cfg.height("hecke")).classes)
                        gs.push_back(real_embedding(g) / std::sqrt(static_cast<double>(norm_m)));
                    rep = verify_hecke_bound(fiber_curve(z0), gs, r, nm);
                } else
                    throw std::runtime_error("unknown bound: " + bound_tag);
                em.emit("volume.verify", bound_report_json(rep));
            }
        } else if (*aud_or) {
            auto g = group_orders(p);
            em.emit("audit.orders", json{{"p", p},
                                         {"gl2", g.gl2.str()},
                                         {"pgl2", g.pgl2.str()},
                                         {"psl2", g.psl2.str()},
                                         {"tolerance_tag", "exact"}});
        } else if (aud_cmd->get_subcommand("catalog")->parsed()) {
            json recs = json::array();
            for (const auto& rec : load_catalog(default_catalog_path()))
                recs.push_back(json{{"d", rec.discriminant},
                                    {"genus", rec.genus},
                                    {"e2", rec.e2},
                                    {"e3", rec.e3},
                                    {"source", rec.source}});
            em.emit("audit.catalog", json{{"records", recs}});
        } else if (*aud_ge) {
            auto lev = level_genus(d, p);
            em.emit("audit.genus", json{{"d", d},
                                        {"p", p},
                                        {"components", lev.components},
                                        {"degree", lev.degree.str()},
                                        {"genus", lev.genus.str()},
                                        {"tolerance_tag", "exact"}});
        } else if (*aud_no) {
            auto O = config_order(em.cfg);
            auto gens = enumerate_elements(O, 1, h("units"));
            if (auto m1 = norm_minus_one_unit(O, h("units"))) gens.push_back(*m1);
            auto rep = nori_check(O, gens, p);
            em.emit("audit.nori", json{{"p", p},
                                       {"image_order", rep.image_order.str()},
                                       {"matches_pgl2", rep.matches_pgl2},
                                       {"matches_psl2", rep.matches_psl2},
                                       {"surjective", rep.surjective},
                                       {"tolerance_tag", "exact"}});
        } else if (*aud_th) {
            auto rep = threshold_search(k, d, em.cfg.constants);
            em.emit("audit.threshold",
                    json{{"k", rep.k},
                         {"d", rep.d},
                         {"found", rep.found},
                         {"p_threshold", rep.p_threshold},
                         {"lower_at_threshold", rep.lower_at_threshold},
                         {"upper_at_threshold", rep.upper_at_threshold},
                         {"convention", rep.convention},
                         {"tolerance_tag", "conditional on echoed constants"}});
        } else if (*self_cmd) {
            return selftest(quick, em);
        } else if (*gold_cmd) {
            if (golden_mode != "record" && golden_mode != "check")
                throw std::runtime_error("golden mode must be record or check");
            return golden_manage(golden_mode, suite, em);
        } else {
            std::cerr << app.help() << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
