#include <algorithm>

#include "cadgym/geometry/sketch.hpp"
#include "cadgym/geometry/types.hpp"

namespace cadgym::geom {

const char* kernel_error_name(KernelError e) {
    switch (e) {
        case KernelError::none: return "none";
        case KernelError::duplicate_name: return "duplicate_name";
        case KernelError::non_finite_input: return "non_finite_input";
        case KernelError::invalid_element: return "invalid_element";
        case KernelError::open_loop: return "open_loop";
        case KernelError::self_intersection: return "self_intersection";
        case KernelError::unsupported_element: return "unsupported_element";
        case KernelError::unknown_frame: return "unknown_frame";
        case KernelError::unknown_sketch: return "unknown_sketch";
        case KernelError::non_positive_depth: return "non_positive_depth";
        case KernelError::unknown_object: return "unknown_object";
        case KernelError::operand_consumed: return "operand_consumed";
        case KernelError::empty_result: return "empty_result";
        case KernelError::fewer_than_two_operands: return "fewer_than_two_operands";
        case KernelError::empty_solid: return "empty_solid";
        case KernelError::internal_error: return "internal_error";
    }
    return "unknown";
}

std::shared_ptr<const CsgSolid> CsgSolid::make_leaf(ExtrudedProfile profile) {
    auto node = std::shared_ptr<CsgSolid>(new CsgSolid());
    node->op_ = Op::leaf;
    node->profile_ = std::move(profile);
    return node;
}

std::shared_ptr<const CsgSolid> CsgSolid::make_boolean(Op op,
                                                       std::shared_ptr<const CsgSolid> base,
                                                       std::shared_ptr<const CsgSolid> tool) {
    auto node = std::shared_ptr<CsgSolid>(new CsgSolid());
    node->op_ = op;
    node->children_ = {std::move(base), std::move(tool)};
    return node;
}

std::shared_ptr<const CsgSolid> CsgSolid::make_multi_fuse(
    std::vector<std::shared_ptr<const CsgSolid>> children) {
    auto node = std::shared_ptr<CsgSolid>(new CsgSolid());
    node->op_ = Op::multi_fuse;
    node->children_ = std::move(children);
    return node;
}

bool CsgSolid::contains(const Vec3& world_point) const {
    switch (op_) {
        case Op::leaf: {
            const Sketch& sketch = *profile_.sketch;
            const Vec3 local = sketch.frame.to_local(world_point);
            if (local.z < 0.0 || local.z > profile_.depth) return false;
            return point_in_loops(sketch.loops, {local.x, local.y});
        }
        case Op::cut:
            return children_[0]->contains(world_point) && !children_[1]->contains(world_point);
        case Op::fuse:
            return children_[0]->contains(world_point) || children_[1]->contains(world_point);
        case Op::common:
            return children_[0]->contains(world_point) && children_[1]->contains(world_point);
        case Op::multi_fuse:
            return std::any_of(children_.begin(), children_.end(),
                               [&](const auto& c) { return c->contains(world_point); });
    }
    return false;
}

Aabb3 CsgSolid::bounds() const {
    switch (op_) {
        case Op::leaf: {
            const Sketch& sketch = *profile_.sketch;
            const Aabb2 flat = loops_bounds(sketch.loops);
            Aabb3 box;
            if (flat.empty()) return box;
            for (const double x : {flat.min.x, flat.max.x})
                for (const double y : {flat.min.y, flat.max.y})
                    for (const double z : {0.0, profile_.depth})
                        box.expand(sketch.frame.to_world({x, y, z}));
            return box;
        }
        case Op::cut:
            return children_[0]->bounds();
        case Op::common:
            return children_[0]->bounds().intersection(children_[1]->bounds());
        case Op::fuse:
        case Op::multi_fuse: {
            Aabb3 box;
            for (const auto& child : children_) box.merge(child->bounds());
            return box;
        }
    }
    return {};
}

std::size_t OccupancyGrid::occupied_count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

}  // namespace cadgym::geom
