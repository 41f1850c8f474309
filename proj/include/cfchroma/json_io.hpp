#ifndef CFCHROMA_JSON_IO_HPP
#define CFCHROMA_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "cfchroma/set_system.hpp"

namespace cfc {

// Shared instance schema:
//   {"schema": 1, "ground_size": N, "edges": [[..],..], "meta": {..},
//    "fixed": {"palette": x, "assignment": {"v": c, ..}}?}
// Assignment keys are decimal vertex ids (JSON object keys are strings).

nlohmann::json system_to_json(const SetSystem& s);
SetSystem system_from_json(const nlohmann::json& j);

nlohmann::json coloring_to_json(const PartialColoring& f);
PartialColoring coloring_from_json(const nlohmann::json& j);

// Instance file = system json + optional embedded "fixed" coloring.
nlohmann::json instance_to_json(const SetSystem& s,
                                const PartialColoring* fixed = nullptr);
void instance_from_json(const nlohmann::json& j, SetSystem& s,
                        std::optional<PartialColoring>& fixed);

nlohmann::json cf_report_to_json(const CFReport& rep);

// File helpers; throw std::runtime_error with the path on failure.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// Canonical serialization used everywhere we promise byte-identical output.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace cfc

#endif
