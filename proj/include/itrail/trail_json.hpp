#pragma once

#include <json.hpp>

#include "itrail/trail.hpp"

namespace itrail {

inline void to_json(nlohmann::json& j, const Trail& t) {
    j = nlohmann::json{{"vertices", t.vertices}, {"edges", t.edge_indices}, {"labels", t.labels}};
}

inline void from_json(const nlohmann::json& j, Trail& t) {
    j.at("vertices").get_to(t.vertices);
    j.at("edges").get_to(t.edge_indices);
    j.at("labels").get_to(t.labels);
}

}  // namespace itrail
