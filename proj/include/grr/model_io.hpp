#pragma once

#include <string>

#include <json.hpp>

#include <grr/foam.hpp>
#include <grr/model.hpp>
#include <grr/riemann_roch.hpp>

namespace grr {

using Json = nlohmann::json;

Json to_json(const GluingModel& model);
GluingModel model_from_json(const Json& j);  // throws InvalidModel on schema errors

Json to_json(const RRReport& report);
RRReport report_from_json(const Json& j);

Json to_json(const DustSpec& dust);
DustSpec dust_from_json(const Json& j);

// Model fields (the consecutive pairing when the disk count is even) plus "foam" and
// "provenance" blocks.
Json to_json(const FoamState& state);
FoamState foam_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace grr
