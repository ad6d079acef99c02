#include "shimura/config.hpp"

#include <fstream>
#include <stdexcept>

namespace shimura {

int RunConfig::height(const std::string& name) const {
    auto it = heights.find(name);
    if (it == heights.end()) throw std::invalid_argument("unknown height name: " + name);
    return it->second;
}

Normalization RunConfig::norm() const {
    Normalization n;
    if (normalization == "-1")
        n.curvature = -1.0;
    else if (normalization == "-4")
        n.curvature = -4.0;
    else
        throw std::invalid_argument("normalization tag must be \"-1\" or \"-4\"");
    return n;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json doc;
    in >> doc;

    if (doc.contains("algebra")) {
        cfg.alpha = doc["algebra"][0].get<long>();
        cfg.beta = doc["algebra"][1].get<long>();
    }
    if (doc.contains("heights"))
        for (auto& [k, v] : doc["heights"].items()) cfg.heights[k] = v.get<int>();
    if (doc.contains("primes")) cfg.primes = doc["primes"].get<std::vector<long>>();
    if (doc.contains("constants")) {
        const auto& c = doc["constants"];
        if (c.contains("c1")) cfg.constants.c1 = c["c1"].get<double>();
        if (c.contains("c2")) cfg.constants.c2 = c["c2"].get<double>();
        if (c.contains("R")) cfg.constants.R = c["R"].get<double>();
        if (c.contains("d_cut")) cfg.constants.d_cut = c["d_cut"].get<double>();
        if (c.contains("p_max")) cfg.constants.p_max = c["p_max"].get<long>();
    }
    if (doc.contains("normalization")) cfg.normalization = doc["normalization"].get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<unsigned>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<int>();
    cfg.norm();  // validate the tag
    return cfg;
}

nlohmann::json config_echo(const RunConfig& cfg) {
    nlohmann::json j;
    j["algebra"] = {cfg.alpha, cfg.beta};
    j["heights"] = cfg.heights;
    j["primes"] = cfg.primes;
    j["constants"] = {{"c1", cfg.constants.c1},
                      {"c2", cfg.constants.c2},
                      {"R", cfg.constants.R},
                      {"d_cut", cfg.constants.d_cut},
                      {"p_max", cfg.constants.p_max}};
    j["normalization"] = cfg.normalization;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    return j;
}

}  // namespace shimura
