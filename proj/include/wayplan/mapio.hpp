#pragma once

#include <string>

#include "wayplan/graph.hpp"

namespace wayplan {

// UTF-8 JSON, keys sorted, costs and free-mode coordinates printed with 6
// decimal places so save(load(x)) is byte-identical.
std::string save_map(const RouteGraph& graph);
RouteGraph load_map(const std::string& bytes);

RouteGraph load_map_file(const std::string& path);
void save_map_file(const RouteGraph& graph, const std::string& path);

}  // namespace wayplan
