#pragma once

#include <string>
#include <string_view>

#include "pointset.hpp"

namespace linefree {

struct GridDocument {
    PointSet set;
    int k;
};

// Text format "linefree-grid v1". Layers are keyed by all coordinates but the
// last two; rows are the second-to-last coordinate, columns the last.
std::string render_grid(const PointSet& s, int k);
GridDocument parse_grid(std::string_view text);

GridDocument read_grid_file(const std::string& path);
void write_grid_file(const std::string& path, const PointSet& s, int k);

}  // namespace linefree
