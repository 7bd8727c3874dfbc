#include "cadgym/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cadgym::metrics {

namespace {

/// Uniform-grid nearest-neighbor index. Queries return the exact minimum
/// squared distance: rings of cells are scanned outward until no farther
/// ring can beat the best candidate.
class NnGrid {
  public:
    explicit NnGrid(const std::vector<Vec3>& points) : points_(points) {
        for (const auto& p : points_) box_.expand(p);
        const Vec3 e = box_.extent();
        const int target =
            std::max(1, static_cast<int>(std::cbrt(static_cast<double>(points_.size()) / 2.0)));
        nx_ = e.x > 0 ? target : 1;
        ny_ = e.y > 0 ? target : 1;
        nz_ = e.z > 0 ? target : 1;
        hx_ = nx_ > 0 && e.x > 0 ? e.x / nx_ : 0.0;
        hy_ = ny_ > 0 && e.y > 0 ? e.y / ny_ : 0.0;
        hz_ = nz_ > 0 && e.z > 0 ? e.z / nz_ : 0.0;
        h_min_ = std::numeric_limits<double>::infinity();
        for (const double h : {hx_, hy_, hz_})
            if (h > 0) h_min_ = std::min(h_min_, h);
        cells_.assign(static_cast<std::size_t>(nx_) * ny_ * nz_, {});
        for (std::size_t i = 0; i < points_.size(); ++i)
            cells_[cell_index(locate(points_[i]))].push_back(static_cast<int>(i));
    }

    double min_squared_distance(const Vec3& q) const {
        const auto [cx, cy, cz] = locate(q);
        double best = std::numeric_limits<double>::infinity();
        const int max_ring = std::max({nx_, ny_, nz_});
        for (int r = 0; r <= max_ring; ++r) {
            if (std::isfinite(best) && std::isfinite(h_min_) && r > 0) {
                const double reach = (r - 1) * h_min_;
                if (reach * reach > best) break;
            }
            scan_ring(q, cx, cy, cz, r, best);
        }
        return best;
    }

  private:
    struct Cell {
        int x, y, z;
    };

    Cell locate(const Vec3& p) const {
        auto clamp_axis = [](double v, double lo, double h, int n) {
            if (h <= 0) return 0;
            const int c = static_cast<int>((v - lo) / h);
            return std::clamp(c, 0, n - 1);
        };
        return {clamp_axis(p.x, box_.min.x, hx_, nx_), clamp_axis(p.y, box_.min.y, hy_, ny_),
                clamp_axis(p.z, box_.min.z, hz_, nz_)};
    }

    std::size_t cell_index(const Cell& c) const {
        return (static_cast<std::size_t>(c.z) * ny_ + c.y) * nx_ + c.x;
    }

    void scan_cell(const Vec3& q, int x, int y, int z, double& best) const {
        for (const int i : cells_[cell_index({x, y, z})])
            best = std::min(best, squared_distance(q, points_[i]));
    }

    void scan_ring(const Vec3& q, int cx, int cy, int cz, int r, double& best) const {
        const int x0 = std::max(cx - r, 0), x1 = std::min(cx + r, nx_ - 1);
        const int y0 = std::max(cy - r, 0), y1 = std::min(cy + r, ny_ - 1);
        const int z0 = std::max(cz - r, 0), z1 = std::min(cz + r, nz_ - 1);
        for (int z = z0; z <= z1; ++z)
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x) {
                    const int d = std::max({std::abs(x - cx), std::abs(y - cy),
                                            std::abs(z - cz)});
                    if (d == r) scan_cell(q, x, y, z, best);
                }
    }

    const std::vector<Vec3>& points_;
    Aabb3 box_;
    int nx_ = 1, ny_ = 1, nz_ = 1;
    double hx_ = 0, hy_ = 0, hz_ = 0, h_min_ = 0;
    std::vector<std::vector<int>> cells_;
};

double directed_mean_min_sq(const std::vector<Vec3>& from, const NnGrid& to_index) {
    double acc = 0.0;
    for (const auto& p : from) acc += to_index.min_squared_distance(p);
    return acc / static_cast<double>(from.size());
}

}  // namespace

PointCloud normalize(PointCloud cloud) {
    Aabb3 box;
    for (const auto& p : cloud.points) box.expand(p);
    const Vec3 center = box.center();
    const Vec3 e = box.extent();
    const double longest = std::max({e.x, e.y, e.z});
    const double scale = longest > 0.0 ? 1.0 / longest : 1.0;
    for (auto& p : cloud.points) p = (p - center) * scale;
    cloud.normalized = true;
    return cloud;
}

Result<double, MetricError> chamfer(const PointCloud& x, const PointCloud& y) {
    using R = Result<double, MetricError>;
    if (x.points.empty() || y.points.empty())
        return R::err(MetricError::empty_cloud, "chamfer distance needs non-empty clouds");
    const NnGrid x_index(x.points);
    const NnGrid y_index(y.points);
    return R::ok(directed_mean_min_sq(x.points, y_index) +
                 directed_mean_min_sq(y.points, x_index));
}

Result<double, MetricError> mmd(const std::vector<PointCloud>& generated,
                                const std::vector<PointCloud>& reference) {
    using R = Result<double, MetricError>;
    if (generated.empty() || reference.empty())
        return R::err(MetricError::empty_set, "mmd needs non-empty cloud sets");
    double acc = 0.0;
    for (const auto& g : generated) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : reference) {
            auto d = chamfer(g, r);
            if (!d) return d;
            best = std::min(best, d.value());
        }
        acc += best;
    }
    return R::ok(acc / static_cast<double>(generated.size()));
}

Result<double, MetricError> cov(const std::vector<PointCloud>& generated,
                                const std::vector<PointCloud>& reference) {
    using R = Result<double, MetricError>;
    if (generated.empty() || reference.empty())
        return R::err(MetricError::empty_set, "coverage needs non-empty cloud sets");
    std::set<std::size_t> covered;
    for (const auto& g : generated) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_index = 0;  // first index wins ties
        for (std::size_t i = 0; i < reference.size(); ++i) {
            auto d = chamfer(g, reference[i]);
            if (!d) return d;
            if (d.value() < best) {
                best = d.value();
                best_index = i;
            }
        }
        covered.insert(best_index);
    }
    return R::ok(static_cast<double>(covered.size()) / static_cast<double>(reference.size()));
}

double iou(const geom::CsgSolid& a, const geom::CsgSolid& b, int resolution) {
    const Aabb3 bounds = geom::shared_bounds(a, b, resolution);
    if (bounds.empty()) return 0.0;
    const geom::OccupancyGrid ga = geom::voxelize_in_bounds(a, bounds, resolution);
    const geom::OccupancyGrid gb = geom::voxelize_in_bounds(b, bounds, resolution);
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < ga.cells.size(); ++i) {
        const bool in_a = ga.cells[i] != 0;
        const bool in_b = gb.cells[i] != 0;
        inter += (in_a && in_b) ? 1 : 0;
        uni += (in_a || in_b) ? 1 : 0;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Result<VoxelDistribution, MetricError> voxel_distribution(const geom::CsgSolid& solid,
                                                          const Aabb3& bounds,
                                                          int resolution, double smoothing) {
    using R = Result<VoxelDistribution, MetricError>;
    if (bounds.empty())
        return R::err(MetricError::empty_solid, "distribution bounds are empty");
    const geom::OccupancyGrid grid = geom::voxelize_in_bounds(solid, bounds, resolution);
    VoxelDistribution dist;
    dist.resolution = resolution;
    dist.bounds = bounds;
    dist.probabilities.resize(grid.cells.size());
    double total = 0.0;
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        dist.probabilities[i] = static_cast<double>(grid.cells[i]) + smoothing;
        total += dist.probabilities[i];
    }
    for (auto& p : dist.probabilities) p /= total;
    return R::ok(std::move(dist));
}

Result<double, MetricError> jsd(const VoxelDistribution& p, const VoxelDistribution& q) {
    using R = Result<double, MetricError>;
    if (p.resolution != q.resolution || p.probabilities.size() != q.probabilities.size())
        return R::err(MetricError::resolution_mismatch,
                      "distributions must share resolution and bounds");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
        const double pi = p.probabilities[i];
        const double qi = q.probabilities[i];
        const double mi = 0.5 * (pi + qi);
        if (pi > 0.0) acc += 0.5 * pi * std::log2(pi / mi);
        if (qi > 0.0) acc += 0.5 * qi * std::log2(qi / mi);
    }
    return R::ok(std::max(0.0, acc));
}

double invalidity_ratio(const std::vector<EpisodeOutcome>& outcomes) {
    if (outcomes.empty()) return 0.0;
    const auto invalid = std::count_if(outcomes.begin(), outcomes.end(),
                                       [](const EpisodeOutcome& o) { return !o.valid(); });
    return static_cast<double>(invalid) / static_cast<double>(outcomes.size());
}

int count_scalars(const nlohmann::json& value) {
    if (value.is_number()) return 1;
    int count = 0;
    if (value.is_array() || value.is_object())
        for (const auto& item : value) count += count_scalars(item);
    return count;
}

Result<double, MetricError> parameter_density(const std::vector<proto::ToolCall>& program,
                                              int part_count) {
    using R = Result<double, MetricError>;
    if (part_count < 1)
        return R::err(MetricError::zero_parts, "part count must be at least 1");
    int scalars = 0;
    for (const auto& call : program) scalars += count_scalars(call.arguments);
    return R::ok(static_cast<double>(scalars) / static_cast<double>(part_count));
}

}  // namespace cadgym::metrics
