#pragma once

#include <string>

#include <json.hpp>

#include "igo/bifurcation.hpp"
#include "igo/design.hpp"
#include "igo/model.hpp"

namespace igo {

using json = nlohmann::json;

// Serialization uses flat field names a1,a2,a3,g1,g2 for the plant and
// k1,k2,k3,k4,h_phi,p_phi,h_f,p_f for the modulation parameters; a model is
// the union of both. Parsers validate at construction and reject unknown keys.

json to_json(const PlantParams& plant);
json to_json(const HillParams& hill);
json to_json(const IgoModel& model);

PlantParams plant_from_json(const json& j);
HillParams hill_from_json(const json& j);
IgoModel model_from_json(const json& j);

json to_json(const Slopes& slopes);
json to_json(const CycleSolution& cycle);
json to_json(const StabilityReport& report);
json to_json(const HillSolveDiagnostics& diag);
json to_json(const DesignResult& result);
json to_json(const BifurcationPoint& point);

/// Throws ConfigError naming the first key of j not in the allowed list.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& context);

/// Fetch a required field, throwing ConfigError with the field name when
/// missing or of the wrong type.
double require_number(const json& j, const char* key, const std::string& context);

} // namespace igo
