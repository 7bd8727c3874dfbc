#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cadgym/core/vec.hpp"

namespace cadgym::geom {

/// Error taxonomy shared by all modeling operations.
enum class KernelError {
    none,
    duplicate_name,
    non_finite_input,
    invalid_element,
    open_loop,
    self_intersection,
    unsupported_element,
    unknown_frame,
    unknown_sketch,
    non_positive_depth,
    unknown_object,
    operand_consumed,
    empty_result,
    fewer_than_two_operands,
    empty_solid,
    internal_error,
};

const char* kernel_error_name(KernelError e);

/// Geometry tolerances and discretization knobs.
struct GeomConfig {
    int arc_segments = 64;         // polygon segments per full turn
    double loop_close_tol = 1e-6;  // endpoint chaining tolerance
    double eps_geom = 1e-9;        // strict-interior margin used by membership tests
    int probe_resolution = 32;     // grid used to detect empty boolean results
};

/// Right-handed frame: rotation applied as intrinsic Z-Y-X from the degrees
/// triple (z, y, x); local point p maps to world as origin + R * p.
struct CoordinateSystem {
    std::string name;
    Vec3 origin;
    Vec3 euler_zyx_deg;  // (z, y, x) in application order
    Mat3 rotation;       // derived once at construction

    static CoordinateSystem from_euler(std::string name, Vec3 origin, Vec3 euler_zyx_deg) {
        CoordinateSystem cs;
        cs.name = std::move(name);
        cs.origin = origin;
        cs.euler_zyx_deg = euler_zyx_deg;
        cs.rotation =
            Mat3::from_euler_zyx_deg(euler_zyx_deg.x, euler_zyx_deg.y, euler_zyx_deg.z);
        return cs;
    }

    static CoordinateSystem from_matrix(std::string name, Vec3 origin, Mat3 rotation) {
        CoordinateSystem cs;
        cs.name = std::move(name);
        cs.origin = origin;
        cs.rotation = rotation;
        return cs;
    }

    Vec3 to_world(const Vec3& local) const { return origin + rotation * local; }
    Vec3 to_local(const Vec3& world) const { return rotation.transposed() * (world - origin); }
};

struct LineElement {
    Vec2 start;
    Vec2 end;
};

struct ArcElement {
    Vec2 center;
    double radius = 0.0;
    double start_angle_deg = 0.0;
    double end_angle_deg = 0.0;  // counter-clockwise sweep, normalized into (0, 360)
};

struct CircleElement {
    Vec2 center;
    double radius = 0.0;
};

using SketchElement = std::variant<LineElement, ArcElement, CircleElement>;

/// Closed polygonized loop; implicitly closed (last vertex connects to first).
using Loop2 = std::vector<Vec2>;

struct Sketch {
    std::string name;
    CoordinateSystem frame;  // snapshot taken at creation
    std::vector<SketchElement> elements;
    std::vector<Loop2> loops;  // derived, validated closed + simple
};

struct ExtrudedProfile {
    std::shared_ptr<const Sketch> sketch;
    double depth = 0.0;  // along local +Z of the sketch frame
};

/// Lazy CSG tree; evaluated only through point membership.
class CsgSolid {
  public:
    enum class Op { leaf, cut, fuse, common, multi_fuse };

    static std::shared_ptr<const CsgSolid> make_leaf(ExtrudedProfile profile);
    static std::shared_ptr<const CsgSolid> make_boolean(Op op,
                                                        std::shared_ptr<const CsgSolid> base,
                                                        std::shared_ptr<const CsgSolid> tool);
    static std::shared_ptr<const CsgSolid> make_multi_fuse(
        std::vector<std::shared_ptr<const CsgSolid>> children);

    Op op() const { return op_; }
    const ExtrudedProfile& profile() const { return profile_; }
    const std::vector<std::shared_ptr<const CsgSolid>>& children() const { return children_; }

    /// Set membership: leaves test z-range + even-odd fill in the sketch
    /// frame; interior nodes combine with boolean logic.
    bool contains(const Vec3& world_point) const;

    /// Conservative world-space bounds of the occupied set.
    Aabb3 bounds() const;

  private:
    CsgSolid() = default;
    Op op_ = Op::leaf;
    ExtrudedProfile profile_;
    std::vector<std::shared_ptr<const CsgSolid>> children_;
};

using SolidPtr = std::shared_ptr<const CsgSolid>;

struct OccupancyGrid {
    int resolution = 0;  // cells per axis
    Aabb3 bounds;
    std::vector<std::uint8_t> cells;  // x-major: index = (z * R + y) * R + x

    std::size_t index(int x, int y, int z) const {
        return (static_cast<std::size_t>(z) * resolution + y) * resolution + x;
    }
    bool occupied(int x, int y, int z) const { return cells[index(x, y, z)] != 0; }

    Vec3 cell_size() const {
        const Vec3 e = bounds.extent();
        const double r = static_cast<double>(resolution);
        return {e.x / r, e.y / r, e.z / r};
    }
    Vec3 cell_center(int x, int y, int z) const {
        const Vec3 h = cell_size();
        return {bounds.min.x + (x + 0.5) * h.x, bounds.min.y + (y + 0.5) * h.y,
                bounds.min.z + (z + 0.5) * h.z};
    }

    std::size_t occupied_count() const;
    double cell_volume() const {
        const Vec3 h = cell_size();
        return h.x * h.y * h.z;
    }
    double volume() const { return static_cast<double>(occupied_count()) * cell_volume(); }
};

}  // namespace cadgym::geom
