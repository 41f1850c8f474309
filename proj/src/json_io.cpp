#include "cfchroma/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace cfc {

using nlohmann::json;

json system_to_json(const SetSystem& s) {
    json j;
    j["schema"] = 1;
    j["ground_size"] = s.ground_size;
    j["edges"] = s.edges;
    j["meta"] = s.meta;
    return j;
}

SetSystem system_from_json(const json& j) {
    SetSystem s;
    if (!j.contains("ground_size") || !j.contains("edges"))
        throw std::runtime_error("instance json needs ground_size and edges");
    s.ground_size = j.at("ground_size").get<int>();
    s.edges = j.at("edges").get<std::vector<std::vector<int>>>();
    if (j.contains("meta")) s.meta = j.at("meta");
    validate_system(s);
    return s;
}

json coloring_to_json(const PartialColoring& f) {
    json j;
    j["palette"] = f.palette;
    json a = json::object();
    for (const auto& [v, c] : f.assignment) a[std::to_string(v)] = c;
    j["assignment"] = a;
    return j;
}

PartialColoring coloring_from_json(const json& j) {
    PartialColoring f;
    f.palette = j.at("palette").get<int>();
    if (j.contains("assignment"))
        for (const auto& [k, v] : j.at("assignment").items())
            f.assignment[std::stoi(k)] = v.get<int>();
    return f;
}

json instance_to_json(const SetSystem& s, const PartialColoring* fixed) {
    json j = system_to_json(s);
    if (fixed) j["fixed"] = coloring_to_json(*fixed);
    return j;
}

void instance_from_json(const json& j, SetSystem& s,
                        std::optional<PartialColoring>& fixed) {
    s = system_from_json(j);
    fixed.reset();
    if (j.contains("fixed")) {
        fixed = coloring_from_json(j.at("fixed"));
        validate_coloring(s, *fixed);
    }
}

json cf_report_to_json(const CFReport& rep) {
    json j;
    j["schema"] = 1;
    j["ok"] = rep.ok;
    if (rep.first_violated) j["first_violated"] = *rep.first_violated;
    json edges = json::array();
    for (const auto& er : rep.edges) {
        json e;
        e["edge"] = er.edge_index;
        json mult = json::object();
        for (const auto& [c, n] : er.multiplicity)
            mult[std::to_string(c)] = n;
        e["multiplicity"] = mult;
        e["unique_set"] = er.unique_set;
        e["satisfied"] = er.satisfied;
        edges.push_back(std::move(e));
    }
    j["edges"] = edges;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("bad json in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << dump_canonical(j);
}

std::string dump_canonical(const json& j) {
    // nlohmann::json keeps object keys sorted, so dump() is already a
    // canonical form; pin the indent so files diff cleanly.
    return j.dump(2) + "\n";
}

}  // namespace cfc
