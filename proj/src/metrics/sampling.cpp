#include "cadgym/core/rng.hpp"
#include "cadgym/metrics/metrics.hpp"

namespace cadgym::metrics {

Result<PointCloud, MetricError> sample_points(const geom::CsgSolid& solid, int count,
                                              std::uint64_t seed, int resolution) {
    using R = Result<PointCloud, MetricError>;
    auto grid_result = geom::voxelize(solid, resolution);
    if (!grid_result)
        return R::err(MetricError::empty_solid,
                      "solid cannot be converted to a point cloud: " + grid_result.message());
    const geom::OccupancyGrid& grid = grid_result.value();

    // Surface shell: occupied cells with at least one empty 6-neighbor.
    std::vector<std::array<int, 3>> shell;
    const int res = grid.resolution;
    auto empty_at = [&](int x, int y, int z) {
        if (x < 0 || y < 0 || z < 0 || x >= res || y >= res || z >= res) return true;
        return !grid.occupied(x, y, z);
    };
    for (int z = 0; z < res; ++z)
        for (int y = 0; y < res; ++y)
            for (int x = 0; x < res; ++x) {
                if (!grid.occupied(x, y, z)) continue;
                if (empty_at(x - 1, y, z) || empty_at(x + 1, y, z) || empty_at(x, y - 1, z) ||
                    empty_at(x, y + 1, z) || empty_at(x, y, z - 1) || empty_at(x, y, z + 1))
                    shell.push_back({x, y, z});
            }
    if (shell.empty())
        return R::err(MetricError::empty_solid, "solid has no surface voxels");

    Rng rng(seed);
    const Vec3 h = grid.cell_size();
    PointCloud cloud;
    cloud.points.reserve(count);
    for (int i = 0; i < count; ++i) {
        const auto& cell = shell[rng.next_below(shell.size())];
        const Vec3 corner{grid.bounds.min.x + cell[0] * h.x, grid.bounds.min.y + cell[1] * h.y,
                          grid.bounds.min.z + cell[2] * h.z};
        cloud.points.push_back({corner.x + rng.next_double() * h.x,
                                corner.y + rng.next_double() * h.y,
                                corner.z + rng.next_double() * h.z});
    }
    cloud.provenance = {"", count, seed};
    return R::ok(std::move(cloud));
}

}  // namespace cadgym::metrics
