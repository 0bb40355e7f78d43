#pragma once

#include <string>
#include <vector>

#include "gesem/geometry.hpp"

namespace gesem {

/// Three-panel SVG rendering of paths as 2D orthographic projections onto
/// the anatomical planes: sagittal (FT/UP), transverse (RT/FT) and coronal
/// (RT/UP). Arc joints are sampled before plotting. Diagnostic output only.
std::string render_svg_planes(const std::vector<Path3>& paths,
                              const std::vector<std::string>& labels = {});

}  // namespace gesem
