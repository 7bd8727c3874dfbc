#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cadgym/feedback/interface_result.hpp"
#include "cadgym/geometry/types.hpp"

namespace cadgym::geom {

enum class ObjectKind { frame, sketch, solid };

const char* object_kind_name(ObjectKind k);

struct ObjectInfo {
    std::string name;
    ObjectKind kind = ObjectKind::solid;
    bool consumed = false;

    bool operator==(const ObjectInfo&) const = default;
};

using DocumentSnapshot = std::vector<ObjectInfo>;

/// Per-episode registry of frames, sketches and solids. Names are unique
/// across kinds; entries are never removed, booleans only flag operands as
/// consumed. Single writer per episode.
class Document {
  public:
    explicit Document(GeomConfig config = GeomConfig{}) : config_(config) {}

    // The six modeling tools. Every call returns the exact feedback text the
    // agent will see, success or fail.
    feedback::InterfaceResult set_coord_system(const std::string& name, Vec3 origin,
                                               Vec3 rotation_zyx_deg);
    feedback::InterfaceResult create_complex_sketch(const std::vector<SketchElement>& elements,
                                                    const std::string& sketch_name,
                                                    const std::string& frame_name);
    feedback::InterfaceResult create_simple_sketch(const SketchElement& element,
                                                   const std::string& sketch_name,
                                                   const std::string& frame_name);
    feedback::InterfaceResult extrude_face(const std::string& sketch_name, double depth,
                                           const std::string& solid_name);
    feedback::InterfaceResult boolean_operation(const std::string& base_name,
                                                const std::string& tool_name,
                                                const std::string& operation,
                                                const std::string& result_name);
    feedback::InterfaceResult multiple_fuse(const std::vector<std::string>& object_names,
                                            const std::string& result_name);

    DocumentSnapshot snapshot() const;

    bool has(const std::string& name) const { return index_.count(name) > 0; }
    const CoordinateSystem* find_frame(const std::string& name) const;
    std::shared_ptr<const Sketch> find_sketch(const std::string& name) const;
    SolidPtr find_solid(const std::string& name) const;
    bool is_consumed(const std::string& name) const;

    /// Most recently created solid that is still live (not consumed), if any.
    SolidPtr last_live_solid() const;

    const GeomConfig& config() const { return config_; }

  private:
    struct Entry {
        std::string name;
        ObjectKind kind;
        bool consumed = false;
        std::optional<CoordinateSystem> frame;
        std::shared_ptr<const Sketch> sketch;
        SolidPtr solid;
    };

    feedback::InterfaceResult make_sketch(const std::vector<SketchElement>& elements,
                                          const std::string& sketch_name,
                                          const std::string& frame_name, bool simple);

    void add_entry(Entry entry);

    GeomConfig config_;
    std::vector<Entry> entries_;  // creation order
    std::unordered_map<std::string, std::size_t> index_;
};

/// True when the solid occupies no space, detected by bound checks plus a
/// probe grid of config.probe_resolution cells per axis.
bool solid_is_empty(const CsgSolid& solid, const GeomConfig& config);

}  // namespace cadgym::geom
