#include "cadgym/geometry/voxel.hpp"

#include <algorithm>
#include <cmath>

namespace cadgym::geom {

Aabb3 padded_bounds(const Aabb3& raw, int resolution) {
    if (raw.empty()) return raw;
    const Vec3 e = raw.extent();
    const double longest = std::max({e.x, e.y, e.z, 1e-12});
    // pad >= achieved cell size keeps one empty cell layer on each side:
    // cell = (extent + 2*pad)/R, so pad must exceed extent/(R-2).
    double pad = longest * 1.5 / resolution;
    if (resolution > 2) pad = std::max(pad, longest * 1.01 / (resolution - 2));
    else pad = longest;
    return raw.inflated(pad);
}

OccupancyGrid voxelize_in_bounds(const CsgSolid& solid, const Aabb3& bounds, int resolution) {
    OccupancyGrid grid;
    grid.resolution = resolution;
    grid.bounds = bounds;
    grid.cells.assign(static_cast<std::size_t>(resolution) * resolution * resolution, 0);

    const Vec3 h = grid.cell_size();
    std::size_t idx = 0;
    for (int z = 0; z < resolution; ++z) {
        const double cz = bounds.min.z + (z + 0.5) * h.z;
        for (int y = 0; y < resolution; ++y) {
            const double cy = bounds.min.y + (y + 0.5) * h.y;
            for (int x = 0; x < resolution; ++x, ++idx) {
                const double cx = bounds.min.x + (x + 0.5) * h.x;
                grid.cells[idx] = solid.contains({cx, cy, cz}) ? 1 : 0;
            }
        }
    }
    return grid;
}

Result<OccupancyGrid, KernelError> voxelize(const CsgSolid& solid, int resolution) {
    using R = Result<OccupancyGrid, KernelError>;
    if (resolution < 2)
        return R::err(KernelError::invalid_element, "voxel resolution must be at least 2");
    const Aabb3 raw = solid.bounds();
    if (raw.empty()) return R::err(KernelError::empty_solid, "solid has empty bounds");

    OccupancyGrid grid = voxelize_in_bounds(solid, padded_bounds(raw, resolution), resolution);
    if (grid.occupied_count() == 0)
        return R::err(KernelError::empty_solid, "solid occupies no voxel");
    return R::ok(std::move(grid));
}

Aabb3 shared_bounds(const CsgSolid& a, const CsgSolid& b, int resolution) {
    Aabb3 merged = a.bounds();
    merged.merge(b.bounds());
    return padded_bounds(merged, resolution);
}

}  // namespace cadgym::geom
