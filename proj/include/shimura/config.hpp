#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "shimura/curves.hpp"
#include "shimura/genus_audit.hpp"

namespace shimura {

// Run-wide knobs; defaults are bundled and the effective values are echoed
// verbatim into every output record.
struct RunConfig {
    long alpha = -1;
    long beta = 3;
    std::map<std::string, int> heights = {
        {"units", 8}, {"torsion", 6}, {"scan", 8}, {"hecke", 8}, {"mintrace", 40},
    };
    std::vector<long> primes = {5, 7, 11, 13};
    BudgetConstants constants;
    std::string normalization = "-4";  // curvature tag: "-1" or "-4"
    unsigned seed = 20260826;
    int threads = 1;

    int height(const std::string& name) const;
    Normalization norm() const;
};

RunConfig load_config(const std::string& path);
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace shimura
