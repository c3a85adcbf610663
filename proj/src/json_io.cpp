#include "igo/json_io.hpp"

#include <algorithm>

#include "igo/errors.hpp"

namespace igo {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = std::any_of(allowed.begin(), allowed.end(),
                                 [&](const char* k) { return key == k; });
        if (!known) throw ConfigError(context + ": unknown key \"" + key + "\"");
    }
}

double require_number(const json& j, const char* key, const std::string& context) {
    if (!j.contains(key)) throw ConfigError(context + ": missing field \"" + key + "\"");
    if (!j[key].is_number()) throw ConfigError(context + ": field \"" + key + "\" must be a number");
    return j[key].get<double>();
}

json to_json(const PlantParams& p) {
    return json{{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}, {"g1", p.g1}, {"g2", p.g2}};
}

json to_json(const HillParams& h) {
    return json{{"k1", h.k1},       {"k2", h.k2},       {"k3", h.k3},   {"k4", h.k4},
                {"h_phi", h.h_phi}, {"p_phi", h.p_phi}, {"h_f", h.h_f}, {"p_f", h.p_f}};
}

json to_json(const IgoModel& m) {
    json j = to_json(m.plant);
    j.update(to_json(m.hill));
    return j;
}

PlantParams plant_from_json(const json& j) {
    reject_unknown_keys(j, {"a1", "a2", "a3", "g1", "g2"}, "plant");
    try {
        return PlantParams(require_number(j, "a1", "plant"), require_number(j, "a2", "plant"),
                           require_number(j, "a3", "plant"), require_number(j, "g1", "plant"),
                           require_number(j, "g2", "plant"));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("plant: ") + e.what());
    }
}

HillParams hill_from_json(const json& j) {
    reject_unknown_keys(j, {"k1", "k2", "k3", "k4", "h_phi", "p_phi", "h_f", "p_f"}, "hill");
    try {
        return HillParams(require_number(j, "k1", "hill"), require_number(j, "k2", "hill"),
                          require_number(j, "k3", "hill"), require_number(j, "k4", "hill"),
                          require_number(j, "h_phi", "hill"), require_number(j, "p_phi", "hill"),
                          require_number(j, "h_f", "hill"), require_number(j, "p_f", "hill"));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("hill: ") + e.what());
    }
}

IgoModel model_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"a1", "a2", "a3", "g1", "g2", "k1", "k2", "k3", "k4", "h_phi", "p_phi",
                         "h_f", "p_f"},
                        "model");
    json plant{{"a1", j.value("a1", json())},
               {"a2", j.value("a2", json())},
               {"a3", j.value("a3", json())},
               {"g1", j.value("g1", json())},
               {"g2", j.value("g2", json())}};
    json hill{{"k1", j.value("k1", json())},     {"k2", j.value("k2", json())},
              {"k3", j.value("k3", json())},     {"k4", j.value("k4", json())},
              {"h_phi", j.value("h_phi", json())}, {"p_phi", j.value("p_phi", json())},
              {"h_f", j.value("h_f", json())},   {"p_f", j.value("p_f", json())}};
    for (auto* part : {&plant, &hill})
        for (auto it = part->begin(); it != part->end();)
            it = it->is_null() ? part->erase(it) : std::next(it);
    return IgoModel{plant_from_json(plant), hill_from_json(hill)};
}

json to_json(const Slopes& s) {
    return json{{"f_prime", s.f_prime}, {"phi_prime", s.phi_prime}};
}

json to_json(const CycleSolution& c) {
    return json{{"x", {c.X[0], c.X[1], c.X[2]}},
                {"z0", c.z0},
                {"lambda", c.lambda},
                {"T", c.T},
                {"residual", c.residual}};
}

json to_json(const StabilityReport& r) {
    json jac = json::array();
    for (std::size_t i = 0; i < 3; ++i)
        jac.push_back({r.jac(i, 0), r.jac(i, 1), r.jac(i, 2)});
    json mult = json::array();
    for (const auto& m : r.multipliers) mult.push_back({m.real(), m.imag()});
    return json{{"jacobian", jac},
                {"tr", r.tr},
                {"M", r.M},
                {"det", r.det},
                {"multipliers", mult},
                {"r0", r.r0},
                {"Lambda", r.Lambda},
                {"tau", r.tau},
                {"is_schur", r.is_schur},
                {"condition_flags", {r.condition_flags[0], r.condition_flags[1], r.condition_flags[2]}},
                {"clustered_roots", r.clustered_roots}};
}

json to_json(const HillSolveDiagnostics& d) {
    return json{{"theta", d.theta},
                {"roots", d.roots},
                {"h_candidates", d.h_candidates},
                {"eta", d.eta},
                {"h", d.h},
                {"chosen_root", d.chosen_root}};
}

json to_json(const DesignResult& r) {
    return json{{"model", to_json(r.model)},
                {"slopes", to_json(r.slopes)},
                {"cycle", to_json(r.cycle)},
                {"stability", to_json(r.stability)},
                {"diagnostics", {{"phi", to_json(r.phi_diag)}, {"f", to_json(r.f_diag)}}},
                {"warnings", r.warnings}};
}

json to_json(const BifurcationPoint& p) {
    return json{{"type", p.type},
                {"param_lo", p.param_lo},
                {"param_hi", p.param_hi},
                {"param", p.param},
                {"critical_multiplier", p.critical_multiplier}};
}

} // namespace igo
