#pragma once

#include "cadgym/core/result.hpp"
#include "cadgym/geometry/types.hpp"

namespace cadgym::geom {

/// Occupancy over an explicit box: cell occupied iff its center is inside.
OccupancyGrid voxelize_in_bounds(const CsgSolid& solid, const Aabb3& bounds, int resolution);

/// Occupancy over the solid's own bounds plus a one-cell-plus margin, so the
/// outermost cell layer is always empty. Fails with empty_solid when nothing
/// is occupied.
Result<OccupancyGrid, KernelError> voxelize(const CsgSolid& solid, int resolution);

/// Bounds used by voxelize(): solid bounds padded so a grid of `resolution`
/// cells keeps at least one empty cell around the solid.
Aabb3 padded_bounds(const Aabb3& raw, int resolution);

/// Shared padded bounds for comparing two solids on one grid.
Aabb3 shared_bounds(const CsgSolid& a, const CsgSolid& b, int resolution);

}  // namespace cadgym::geom
