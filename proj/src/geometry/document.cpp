#include "cadgym/geometry/document.hpp"

#include <algorithm>

#include "cadgym/feedback/feedback.hpp"
#include "cadgym/geometry/sketch.hpp"
#include "cadgym/geometry/voxel.hpp"

namespace cadgym::geom {

using feedback::InterfaceResult;
namespace msg = feedback::msg;

const char* object_kind_name(ObjectKind k) {
    switch (k) {
        case ObjectKind::frame: return "frame";
        case ObjectKind::sketch: return "sketch";
        case ObjectKind::solid: return "solid";
    }
    return "unknown";
}

void Document::add_entry(Entry entry) {
    index_[entry.name] = entries_.size();
    entries_.push_back(std::move(entry));
}

const CoordinateSystem* Document::find_frame(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end() || entries_[it->second].kind != ObjectKind::frame) return nullptr;
    return &*entries_[it->second].frame;
}

std::shared_ptr<const Sketch> Document::find_sketch(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end() || entries_[it->second].kind != ObjectKind::sketch) return nullptr;
    return entries_[it->second].sketch;
}

SolidPtr Document::find_solid(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end() || entries_[it->second].kind != ObjectKind::solid) return nullptr;
    return entries_[it->second].solid;
}

bool Document::is_consumed(const std::string& name) const {
    auto it = index_.find(name);
    return it != index_.end() && entries_[it->second].consumed;
}

SolidPtr Document::last_live_solid() const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->kind == ObjectKind::solid && !it->consumed) return it->solid;
    return nullptr;
}

DocumentSnapshot Document::snapshot() const {
    DocumentSnapshot snap;
    snap.reserve(entries_.size());
    for (const auto& e : entries_) snap.push_back({e.name, e.kind, e.consumed});
    return snap;
}

InterfaceResult Document::set_coord_system(const std::string& name, Vec3 origin,
                                           Vec3 rotation_zyx_deg) {
    const std::string tool = "set_coord_system";
    if (name.empty())
        return InterfaceResult::fail(KernelError::invalid_element,
                                     msg::tool_failed(tool, "name must not be empty"));
    if (has(name))
        return InterfaceResult::fail(
            KernelError::duplicate_name,
            msg::tool_failed(tool, "an object named " + name + " already exists"));
    if (!is_finite(origin) || !is_finite(rotation_zyx_deg))
        return InterfaceResult::fail(KernelError::non_finite_input,
                                     msg::tool_failed(tool, "origin or rotation is not finite"));

    Entry entry;
    entry.name = name;
    entry.kind = ObjectKind::frame;
    entry.frame = CoordinateSystem::from_euler(name, origin, rotation_zyx_deg);
    add_entry(std::move(entry));
    return InterfaceResult::ok(msg::coord_system_created(name, origin, rotation_zyx_deg));
}

InterfaceResult Document::make_sketch(const std::vector<SketchElement>& elements,
                                      const std::string& sketch_name,
                                      const std::string& frame_name, bool simple) {
    if (sketch_name.empty())
        return InterfaceResult::fail(KernelError::invalid_element,
                                     msg::sketch_failed("sketch name must not be empty"));
    if (has(sketch_name))
        return InterfaceResult::fail(
            KernelError::duplicate_name,
            msg::sketch_failed("an object named " + sketch_name + " already exists"));
    const CoordinateSystem* frame = find_frame(frame_name);
    if (frame == nullptr)
        return InterfaceResult::fail(
            KernelError::unknown_frame,
            msg::sketch_failed("no coordinate system named " + frame_name + " exists"));

    auto loops = build_loops(elements, config_);
    if (!loops) {
        if (loops.error() == KernelError::unsupported_element)
            return InterfaceResult::fail(loops.error(), msg::sketch_failed(loops.message()));
        if (loops.error() == KernelError::non_finite_input ||
            loops.error() == KernelError::invalid_element)
            return InterfaceResult::fail(loops.error(), msg::sketch_failed(loops.message()));
        // Geometric failures (open loop, self-intersection) carry the
        // step-by-step retry hint.
        return InterfaceResult::fail(loops.error(), msg::sketch_failed(loops.message()));
    }
    if (simple && loops.value().size() != 1)
        return InterfaceResult::fail(
            KernelError::invalid_element,
            msg::sketch_failed("a simple sketch must form exactly one loop"));

    auto sketch = std::make_shared<Sketch>();
    sketch->name = sketch_name;
    sketch->frame = *frame;
    sketch->elements = elements;
    sketch->loops = loops.take();

    Entry entry;
    entry.name = sketch_name;
    entry.kind = ObjectKind::sketch;
    entry.sketch = sketch;
    add_entry(std::move(entry));
    return InterfaceResult::ok(msg::sketch_created(sketch_name, sketch_name + "_face"));
}

InterfaceResult Document::create_complex_sketch(const std::vector<SketchElement>& elements,
                                                const std::string& sketch_name,
                                                const std::string& frame_name) {
    if (elements.empty())
        return InterfaceResult::fail(KernelError::invalid_element,
                                     msg::sketch_failed("element list is empty"));
    return make_sketch(elements, sketch_name, frame_name, false);
}

InterfaceResult Document::create_simple_sketch(const SketchElement& element,
                                               const std::string& sketch_name,
                                               const std::string& frame_name) {
    return make_sketch({element}, sketch_name, frame_name, true);
}

InterfaceResult Document::extrude_face(const std::string& sketch_name, double depth,
                                       const std::string& solid_name) {
    const std::string tool = "extrude_face";
    if (solid_name.empty())
        return InterfaceResult::fail(KernelError::invalid_element,
                                     msg::tool_failed(tool, "solid name must not be empty"));
    if (has(solid_name))
        return InterfaceResult::fail(
            KernelError::duplicate_name,
            msg::tool_failed(tool, "an object named " + solid_name + " already exists"));
    auto sketch = find_sketch(sketch_name);
    if (!sketch)
        return InterfaceResult::fail(
            KernelError::unknown_sketch,
            msg::tool_failed(tool, "no sketch named " + sketch_name + " exists"));
    if (!is_finite(depth))
        return InterfaceResult::fail(KernelError::non_finite_input,
                                     msg::tool_failed(tool, "depth is not finite"));
    if (depth <= 0.0)
        return InterfaceResult::fail(
            KernelError::non_positive_depth,
            msg::tool_failed(tool, "depth must be positive, got " + msg::number(depth)));

    Entry entry;
    entry.name = solid_name;
    entry.kind = ObjectKind::solid;
    entry.solid = CsgSolid::make_leaf(ExtrudedProfile{sketch, depth});
    add_entry(std::move(entry));
    return InterfaceResult::ok(msg::solid_extruded(solid_name, sketch_name, depth));
}

InterfaceResult Document::boolean_operation(const std::string& base_name,
                                            const std::string& tool_name,
                                            const std::string& operation,
                                            const std::string& result_name) {
    auto fail = [&](KernelError code, const std::string& detail) {
        return InterfaceResult::fail(code,
                                     msg::boolean_failed(operation, base_name, tool_name, detail));
    };

    CsgSolid::Op op;
    if (operation == "cut") op = CsgSolid::Op::cut;
    else if (operation == "fuse") op = CsgSolid::Op::fuse;
    else if (operation == "common") op = CsgSolid::Op::common;
    else
        return fail(KernelError::invalid_element,
                    "unknown operation '" + operation + "' (expected cut, fuse or common)");

    if (result_name.empty())
        return fail(KernelError::invalid_element, "result name must not be empty");
    if (has(result_name))
        return fail(KernelError::duplicate_name,
                    "an object named " + result_name + " already exists");

    for (const std::string& operand : {base_name, tool_name}) {
        if (!find_solid(operand))
            return fail(KernelError::unknown_object, "no solid named " + operand + " exists");
        if (is_consumed(operand))
            return fail(KernelError::operand_consumed,
                        operand + " was already consumed by a previous Boolean operation");
    }

    SolidPtr combined =
        CsgSolid::make_boolean(op, find_solid(base_name), find_solid(tool_name));
    if ((op == CsgSolid::Op::cut || op == CsgSolid::Op::common) &&
        solid_is_empty(*combined, config_))
        return fail(KernelError::empty_result, "the resulting solid is empty");

    entries_[index_[base_name]].consumed = true;
    entries_[index_[tool_name]].consumed = true;
    Entry entry;
    entry.name = result_name;
    entry.kind = ObjectKind::solid;
    entry.solid = std::move(combined);
    add_entry(std::move(entry));
    return InterfaceResult::ok(msg::boolean_succeeded(result_name, operation));
}

InterfaceResult Document::multiple_fuse(const std::vector<std::string>& object_names,
                                        const std::string& result_name) {
    const std::string tool = "multiple_fuse";
    if (object_names.size() < 2)
        return InterfaceResult::fail(
            KernelError::fewer_than_two_operands,
            msg::tool_failed(tool, "at least two objects are required, got " +
                                       std::to_string(object_names.size())));
    if (result_name.empty())
        return InterfaceResult::fail(KernelError::invalid_element,
                                     msg::tool_failed(tool, "result name must not be empty"));
    if (has(result_name))
        return InterfaceResult::fail(
            KernelError::duplicate_name,
            msg::tool_failed(tool, "an object named " + result_name + " already exists"));

    std::vector<SolidPtr> children;
    children.reserve(object_names.size());
    for (const auto& operand : object_names) {
        SolidPtr solid = find_solid(operand);
        if (!solid)
            return InterfaceResult::fail(
                KernelError::unknown_object,
                msg::tool_failed(tool, "no solid named " + operand + " exists"));
        if (is_consumed(operand))
            return InterfaceResult::fail(
                KernelError::operand_consumed,
                msg::tool_failed(tool, operand +
                                           " was already consumed by a previous Boolean "
                                           "operation"));
        children.push_back(std::move(solid));
    }

    for (const auto& operand : object_names) entries_[index_[operand]].consumed = true;
    Entry entry;
    entry.name = result_name;
    entry.kind = ObjectKind::solid;
    entry.solid = CsgSolid::make_multi_fuse(std::move(children));
    add_entry(std::move(entry));
    return InterfaceResult::ok(msg::multi_fuse_succeeded(result_name, object_names.size()));
}

bool solid_is_empty(const CsgSolid& solid, const GeomConfig& config) {
    const Aabb3 raw = solid.bounds();
    if (raw.empty()) return true;
    const OccupancyGrid probe =
        voxelize_in_bounds(solid, padded_bounds(raw, config.probe_resolution),
                           config.probe_resolution);
    return probe.occupied_count() == 0;
}

}  // namespace cadgym::geom
