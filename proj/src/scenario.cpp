#include "irsim/scenario.hpp"

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

namespace irsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw ParameterError("scenario: " + what);
}

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            fail("unknown key '" + section + "." + item.key() + "'");
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

long long get_int(const json& obj, const std::string& path, const std::string& key,
                  long long fallback) {
    const json* v = find(obj, key);
    if (!v)
        return fallback;
    if (!v->is_number_integer())
        fail("'" + path + "." + key + "' must be an integer");
    return v->get<long long>();
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback) {
    const json* v = find(obj, key);
    if (!v)
        return fallback;
    if (!v->is_number())
        fail("'" + path + "." + key + "' must be a number");
    return v->get<double>();
}

SystemConfig parse_system(const json& j) {
    static const std::set<std::string> keys = {
        "N",  "N0", "L",  "L_cp",   "Ld",     "L1",     "L2",     "M",      "M0",
        "I0", "omega", "sigma2", "gamma0", "kappa",  "D1",     "D2",     "D3",
        "alpha1", "alpha2", "alpha3", "pdp_decay"};
    if (!j.is_object())
        fail("'system' must be an object");
    reject_unknown_keys(j, "system", keys);

    SystemConfig cfg;
    cfg.N = static_cast<int>(get_int(j, "system", "N", cfg.N));
    cfg.N0 = static_cast<int>(get_int(j, "system", "N0", cfg.N0));
    cfg.L = static_cast<int>(get_int(j, "system", "L", cfg.L));
    cfg.L_cp = static_cast<int>(get_int(j, "system", "L_cp", cfg.L_cp));
    cfg.Ld = static_cast<int>(get_int(j, "system", "Ld", cfg.Ld));
    cfg.L1 = static_cast<int>(get_int(j, "system", "L1", cfg.L1));
    cfg.L2 = static_cast<int>(get_int(j, "system", "L2", cfg.L2));
    cfg.M = static_cast<int>(get_int(j, "system", "M", cfg.M));
    cfg.M0 = static_cast<int>(get_int(j, "system", "M0", cfg.M0));
    cfg.I0 = static_cast<int>(get_int(j, "system", "I0", cfg.I0));
    cfg.omega = static_cast<long>(get_int(j, "system", "omega", cfg.omega));
    cfg.sigma2 = get_num(j, "system", "sigma2", cfg.sigma2);
    cfg.gamma0 = get_num(j, "system", "gamma0", cfg.gamma0);
    cfg.kappa = get_num(j, "system", "kappa", cfg.kappa);
    cfg.D1 = get_num(j, "system", "D1", cfg.D1);
    cfg.D2 = get_num(j, "system", "D2", cfg.D2);
    cfg.D3 = get_num(j, "system", "D3", cfg.D3);
    cfg.alpha1 = get_num(j, "system", "alpha1", cfg.alpha1);
    cfg.alpha2 = get_num(j, "system", "alpha2", cfg.alpha2);
    cfg.alpha3 = get_num(j, "system", "alpha3", cfg.alpha3);
    cfg.pdp_decay = get_num(j, "system", "pdp_decay", cfg.pdp_decay);
    return cfg;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileError("cannot open scenario file " + path);

    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON in ") + path + ": " + e.what());
    }

    if (!root.is_object())
        fail("top level must be an object");
    reject_unknown_keys(root, "<top>", {"system", "sweep", "schemes"});
    if (!root.contains("system") || !root.contains("sweep") || !root.contains("schemes"))
        fail("required keys: system, sweep, schemes");

    ScenarioConfig scenario;
    scenario.base = parse_system(root["system"]);

    const json& sweep = root["sweep"];
    if (!sweep.is_object())
        fail("'sweep' must be an object");
    reject_unknown_keys(sweep, "sweep", {"axis", "grid", "trials", "seed", "snr_db"});

    const json* axis = find(sweep, "axis");
    if (!axis || !axis->is_string())
        fail("'sweep.axis' must be a string");
    const std::string axis_name = axis->get<std::string>();
    if (axis_name == "snr_db_grid") {
        scenario.axis = SweepAxis::kSnrDbGrid;
        if (find(sweep, "snr_db"))
            fail("'sweep.snr_db' only applies to the kappa_db_grid axis");
    } else if (axis_name == "kappa_db_grid") {
        scenario.axis = SweepAxis::kKappaDbGrid;
        if (!find(sweep, "snr_db"))
            fail("'sweep.snr_db' is required for the kappa_db_grid axis");
        scenario.snr_db = get_num(sweep, "sweep", "snr_db", 0.0);
    } else {
        fail("'sweep.axis' must be snr_db_grid or kappa_db_grid");
    }

    const json* grid = find(sweep, "grid");
    if (!grid || !grid->is_array() || grid->empty())
        fail("'sweep.grid' must be a non-empty array");
    for (const auto& v : *grid) {
        if (!v.is_number())
            fail("'sweep.grid' entries must be numbers");
        scenario.grid.push_back(v.get<double>());
    }

    const long long trials = get_int(sweep, "sweep", "trials", 1000);
    if (trials < 1)
        fail("'sweep.trials' must be >= 1");
    scenario.trials = static_cast<int>(trials);
    const long long seed = get_int(sweep, "sweep", "seed", 1);
    if (seed < 0)
        fail("'sweep.seed' must be non-negative");
    scenario.seed = static_cast<std::uint64_t>(seed);

    const json& schemes = root["schemes"];
    if (!schemes.is_array() || schemes.empty())
        fail("'schemes' must be a non-empty array");
    for (const auto& v : schemes) {
        if (!v.is_string())
            fail("'schemes' entries must be strings");
        const auto id = scheme_from_name(v.get<std::string>());
        if (!id)
            fail("unknown scheme '" + v.get<std::string>() + "'");
        for (SchemeId existing : scenario.schemes)
            if (existing == *id)
                fail("duplicate scheme '" + v.get<std::string>() + "'");
        scenario.schemes.push_back(*id);
    }

    validate(scenario.base);
    return scenario;
}

}  // namespace irsim
