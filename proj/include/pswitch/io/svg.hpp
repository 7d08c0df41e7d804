#pragma once
// Static SVG plot of the switch indicator profiles with the detected
// regions shaded. Output is deterministic for identical inputs.

#include <string>

#include "pswitch/grid.hpp"
#include "pswitch/regions.hpp"

namespace pswitch {

std::string render_regions_svg(const Grid& grid, const GFunctions& g,
                               const RegionStructure& rs);

}  // namespace pswitch
