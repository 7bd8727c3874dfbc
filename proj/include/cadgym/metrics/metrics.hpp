#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadgym/core/result.hpp"
#include "cadgym/geometry/types.hpp"
#include "cadgym/geometry/voxel.hpp"
#include "cadgym/protocol/tags.hpp"

namespace cadgym::metrics {

enum class MetricError {
    empty_cloud,
    empty_set,
    empty_solid,
    resolution_mismatch,
    zero_parts,
};

struct CloudProvenance {
    std::string solid_id;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

struct PointCloud {
    std::vector<Vec3> points;
    CloudProvenance provenance;
    bool normalized = false;
};

/// Normalized voxel occupancy: probabilities over an R^3 grid, summing to 1.
struct VoxelDistribution {
    int resolution = 0;
    Aabb3 bounds;
    std::vector<double> probabilities;
};

/// Defaults for the evaluation pipeline; individual ops take explicit values.
struct MetricConfig {
    int sample_count = 2048;
    int voxel_resolution = 64;  // IoU and sampling substrate
    int jsd_resolution = 32;
    double jsd_smoothing = 1e-12;
};

/// Uniform points over the surface-shell voxels (occupied cells with an
/// empty 6-neighbor), jittered within each cell. Deterministic per seed.
Result<PointCloud, MetricError> sample_points(const geom::CsgSolid& solid, int count,
                                              std::uint64_t seed, int resolution = 64);

/// Translates the bounding-box center to the origin and scales isotropically
/// so the longest box edge is 1; every coordinate then lies in [-0.5, 0.5].
/// Zero-extent clouds are translated only.
PointCloud normalize(PointCloud cloud);

/// Two-sided squared-distance Chamfer: mean over X of the squared distance
/// to the nearest y, plus the mirror term. Exact; nearest neighbors come
/// from a uniform grid rather than a quadratic scan.
Result<double, MetricError> chamfer(const PointCloud& x, const PointCloud& y);

/// Mean over generated clouds of the Chamfer distance to the closest
/// reference cloud.
Result<double, MetricError> mmd(const std::vector<PointCloud>& generated,
                                const std::vector<PointCloud>& reference);

/// Fraction of reference clouds that are the nearest match of at least one
/// generated cloud.
Result<double, MetricError> cov(const std::vector<PointCloud>& generated,
                                const std::vector<PointCloud>& reference);

/// Voxel IoU over a shared grid spanning both solids.
double iou(const geom::CsgSolid& a, const geom::CsgSolid& b, int resolution = 64);

/// Occupancy of `solid` over explicit bounds, smoothed and normalized into a
/// probability distribution.
Result<VoxelDistribution, MetricError> voxel_distribution(const geom::CsgSolid& solid,
                                                          const Aabb3& bounds,
                                                          int resolution, double smoothing);

/// Jensen-Shannon divergence, base-2 logs; in [0, 1].
Result<double, MetricError> jsd(const VoxelDistribution& p, const VoxelDistribution& q);

/// Outcome flags of one evaluated episode or program conversion.
struct EpisodeOutcome {
    bool produced_solid = false;
    bool sampled_ok = false;
    bool answered = true;  // programs (non-episodes) count as answered

    bool valid() const { return produced_solid && sampled_ok && answered; }
};

/// Fraction of outcomes that failed to yield a usable point cloud.
double invalidity_ratio(const std::vector<EpisodeOutcome>& outcomes);

/// Total scalar count over all tool-call arguments divided by the part
/// count. Every JSON number nested anywhere in the arguments counts as one
/// scalar.
Result<double, MetricError> parameter_density(const std::vector<proto::ToolCall>& program,
                                              int part_count);

/// Scalars in one arguments value (recursive).
int count_scalars(const nlohmann::json& value);

}  // namespace cadgym::metrics
