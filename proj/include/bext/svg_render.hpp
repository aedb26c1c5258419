#pragma once

#include <string>

#include "bext/scenario.hpp"

namespace bext {

struct RenderSpec {
  int size_px = 800;   // square canvas edge
  int density = 24;    // arrow count per axis, >= 4
};

// Deterministic SVG picture of the extension: domain boundary, circumscribed
// circle, anchor, and displacement arrows q -> F(q) on a uniform grid.
// Surface scenarios are drawn in the tangent-plane shadow.
std::string render_svg(const Pipeline& pipeline, const RenderSpec& spec);

}  // namespace bext
