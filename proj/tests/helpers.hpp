#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cadgym/core/rng.hpp"
#include "cadgym/geometry/document.hpp"
#include "cadgym/geometry/sketch.hpp"
#include "cadgym/geometry/types.hpp"
#include "cadgym/geometry/voxel.hpp"

namespace testutil {

using namespace cadgym;

inline std::vector<geom::SketchElement> rect_elements(double x0, double y0, double x1,
                                                      double y1) {
    return {geom::LineElement{{x0, y0}, {x1, y0}}, geom::LineElement{{x1, y0}, {x1, y1}},
            geom::LineElement{{x1, y1}, {x0, y1}}, geom::LineElement{{x0, y1}, {x0, y0}}};
}

/// Leaf box spanning [x0,x1]x[y0,y1] in the given frame, extruded to depth.
inline geom::SolidPtr make_box_leaf(const geom::CoordinateSystem& frame, double x0, double y0,
                                    double x1, double y1, double depth) {
    auto sketch = std::make_shared<geom::Sketch>();
    sketch->name = "box";
    sketch->frame = frame;
    sketch->elements = rect_elements(x0, y0, x1, y1);
    sketch->loops = {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
    return geom::CsgSolid::make_leaf(geom::ExtrudedProfile{sketch, depth});
}

/// Axis-aligned unit-style box [min, max] in a fresh identity frame.
inline geom::SolidPtr make_aligned_box(Vec3 min, Vec3 max) {
    const auto frame =
        geom::CoordinateSystem::from_euler("frame", {0, 0, min.z}, {0, 0, 0});
    return make_box_leaf(frame, min.x, min.y, max.x, max.y, max.z - min.z);
}

// ---------------------------------------------------------------------------
// Brute-force membership oracle: re-implements leaf membership (inverse
// transform + crossing test written independently) and combines leaves with
// plain boolean logic. Never calls CsgSolid::contains.
// ---------------------------------------------------------------------------

inline bool oracle_point_in_polygon(const std::vector<geom::Loop2>& loops, double px,
                                    double py) {
    int crossings = 0;
    for (const auto& loop : loops) {
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = loop[i];
            const auto& b = loop[(i + 1) % n];
            const bool a_below = a.y <= py;
            const bool b_below = b.y <= py;
            if (a_below == b_below) continue;
            const double t = (py - a.y) / (b.y - a.y);
            const double x_at = a.x + t * (b.x - a.x);
            if (x_at > px) ++crossings;
        }
    }
    return (crossings % 2) == 1;
}

inline bool oracle_leaf_contains(const geom::ExtrudedProfile& profile, const Vec3& p) {
    const auto& frame = profile.sketch->frame;
    const Vec3 rel = p - frame.origin;
    const auto& m = frame.rotation.m;
    // Columns of R dotted with the relative vector = R^T * rel.
    const double lx = m[0][0] * rel.x + m[1][0] * rel.y + m[2][0] * rel.z;
    const double ly = m[0][1] * rel.x + m[1][1] * rel.y + m[2][1] * rel.z;
    const double lz = m[0][2] * rel.x + m[1][2] * rel.y + m[2][2] * rel.z;
    if (lz < 0.0 || lz > profile.depth) return false;
    return oracle_point_in_polygon(profile.sketch->loops, lx, ly);
}

inline bool oracle_contains(const geom::CsgSolid& solid, const Vec3& p) {
    using Op = geom::CsgSolid::Op;
    switch (solid.op()) {
        case Op::leaf: return oracle_leaf_contains(solid.profile(), p);
        case Op::cut:
            return oracle_contains(*solid.children()[0], p) &&
                   !oracle_contains(*solid.children()[1], p);
        case Op::fuse:
            return oracle_contains(*solid.children()[0], p) ||
                   oracle_contains(*solid.children()[1], p);
        case Op::common:
            return oracle_contains(*solid.children()[0], p) &&
                   oracle_contains(*solid.children()[1], p);
        case Op::multi_fuse: {
            for (const auto& child : solid.children())
                if (oracle_contains(*child, p)) return true;
            return false;
        }
    }
    return false;
}

/// Random box leaf with a random (rotated, translated) frame.
inline geom::SolidPtr random_box(Rng& rng) {
    const Vec3 origin{rng.next_range(-3, 3), rng.next_range(-3, 3), rng.next_range(-3, 3)};
    const Vec3 euler{rng.next_range(-180, 180), rng.next_range(-90, 90),
                     rng.next_range(-180, 180)};
    const auto frame = geom::CoordinateSystem::from_euler("rf", origin, euler);
    const double x0 = rng.next_range(-2.5, 0.5);
    const double y0 = rng.next_range(-2.5, 0.5);
    const double x1 = x0 + rng.next_range(0.4, 3.0);
    const double y1 = y0 + rng.next_range(0.4, 3.0);
    const double depth = rng.next_range(0.4, 3.0);
    return make_box_leaf(frame, x0, y0, x1, y1, depth);
}

inline geom::SolidPtr random_tree(Rng& rng, int depth) {
    if (depth <= 0 || rng.next_double() < 0.35) return random_box(rng);
    const double pick = rng.next_double();
    using Op = geom::CsgSolid::Op;
    if (pick < 0.7) {
        const Op op = pick < 0.25 ? Op::cut : (pick < 0.5 ? Op::fuse : Op::common);
        return geom::CsgSolid::make_boolean(op, random_tree(rng, depth - 1),
                                            random_tree(rng, depth - 1));
    }
    std::vector<geom::SolidPtr> children;
    const int n = 2 + static_cast<int>(rng.next_below(2));
    for (int i = 0; i < n; ++i) children.push_back(random_tree(rng, depth - 1));
    return geom::CsgSolid::make_multi_fuse(std::move(children));
}

inline double grid_volume(const geom::CsgSolid& solid, int resolution = 64) {
    auto grid = geom::voxelize(solid, resolution);
    return grid ? grid.value().volume() : 0.0;
}

}  // namespace testutil
