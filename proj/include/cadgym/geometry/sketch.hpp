#pragma once

#include <string>
#include <vector>

#include "cadgym/core/result.hpp"
#include "cadgym/geometry/types.hpp"

namespace cadgym::geom {

/// Polygonizes the elements and chains them into closed, simple loops.
/// Circles always form their own loop; lines/arcs are chained end-to-end
/// within config.loop_close_tol. Fails with open_loop, self_intersection,
/// invalid_element, non_finite_input or unsupported_element.
Result<std::vector<Loop2>, KernelError> build_loops(const std::vector<SketchElement>& elements,
                                                    const GeomConfig& config);

/// Shoelace area; positive for counter-clockwise loops.
double signed_area(const Loop2& loop);

/// Even-odd rule across all loops.
bool point_in_loops(const std::vector<Loop2>& loops, const Vec2& p);

Aabb2 loops_bounds(const std::vector<Loop2>& loops);

/// Polygonize one circle as a regular n-gon (helper shared with tests).
Loop2 polygonize_circle(const CircleElement& c, int segments);

}  // namespace cadgym::geom
