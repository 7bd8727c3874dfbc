#include "cadgym/protocol/tools.hpp"

#include <algorithm>
#include <stdexcept>

#include "cadgym/feedback/feedback.hpp"

namespace cadgym::proto {

using feedback::InterfaceResult;
using nlohmann::json;
namespace msg = feedback::msg;

const std::vector<std::string>& tool_names() {
    static const std::vector<std::string> names = {
        kToolSetCoordSystem,    kToolCreateComplexSketch, kToolCreateSimpleSketch,
        kToolBooleanOperation,  kToolMultipleFuse,        kToolExtrudeFace,
    };
    return names;
}

bool is_known_tool(const std::string& name) {
    const auto& names = tool_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

json vec_schema(int size, const char* what) {
    return {{"type", "array"},
            {"items", {{"type", "number"}}},
            {"minItems", size},
            {"maxItems", size},
            {"description", what}};
}

json element_schema() {
    return {{"type", "object"},
            {"description",
             "Sketch element. type=line needs start/end [x,y]; type=arc needs center [x,y], "
             "radius and start_angle/end_angle in degrees (counter-clockwise); type=circle "
             "needs center [x,y] and radius."},
            {"properties",
             {{"type", {{"type", "string"}, {"enum", {"line", "arc", "circle"}}}},
              {"start", vec_schema(2, "segment start")},
              {"end", vec_schema(2, "segment end")},
              {"center", vec_schema(2, "center point")},
              {"radius", {{"type", "number"}}},
              {"start_angle", {{"type", "number"}}},
              {"end_angle", {{"type", "number"}}}}},
            {"required", {"type"}}};
}

json object_schema(json properties, json required) {
    return {{"type", "object"}, {"properties", std::move(properties)},
            {"required", std::move(required)}};
}

struct ArgReader {
    const json& args;
    std::string error;  // first problem found, empty if none

    bool fail(const std::string& detail) {
        if (error.empty()) error = detail;
        return false;
    }

    bool get_string(const char* key, std::string& out) {
        if (!args.contains(key)) return fail(std::string("missing argument '") + key + "'");
        if (!args[key].is_string())
            return fail(std::string("argument '") + key + "' must be a string");
        out = args[key].get<std::string>();
        return true;
    }

    bool get_number(const char* key, double& out) {
        if (!args.contains(key)) return fail(std::string("missing argument '") + key + "'");
        if (!args[key].is_number())
            return fail(std::string("argument '") + key + "' must be a number");
        out = args[key].get<double>();
        return true;
    }

    bool get_vec2(const json& node, const char* key, Vec2& out) {
        if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
            !node[1].is_number())
            return fail(std::string("'") + key + "' must be an array of 2 numbers");
        out = {node[0].get<double>(), node[1].get<double>()};
        return true;
    }

    bool get_vec3(const char* key, Vec3& out) {
        if (!args.contains(key)) return fail(std::string("missing argument '") + key + "'");
        const json& node = args[key];
        if (!node.is_array() || node.size() != 3 || !node[0].is_number() ||
            !node[1].is_number() || !node[2].is_number())
            return fail(std::string("'") + key + "' must be an array of 3 numbers");
        out = {node[0].get<double>(), node[1].get<double>(), node[2].get<double>()};
        return true;
    }
};

/// nullopt plus an error string when the element is structurally bad; the
/// unsupported_element case is reported through `unsupported`.
std::optional<geom::SketchElement> decode_element(const json& node, std::string& error,
                                                  std::string& unsupported) {
    if (!node.is_object() || !node.contains("type") || !node["type"].is_string()) {
        error = "sketch element must be an object with a string 'type'";
        return std::nullopt;
    }
    const std::string type = node["type"].get<std::string>();
    ArgReader reader{node, {}};
    if (type == "line") {
        geom::LineElement line;
        if (!node.contains("start") || !node.contains("end") ||
            !reader.get_vec2(node["start"], "start", line.start) ||
            !reader.get_vec2(node["end"], "end", line.end)) {
            error = reader.error.empty() ? "line needs 'start' and 'end'" : reader.error;
            return std::nullopt;
        }
        return geom::SketchElement{line};
    }
    if (type == "arc") {
        geom::ArcElement arc;
        if (!node.contains("center") || !reader.get_vec2(node["center"], "center", arc.center)) {
            error = reader.error.empty() ? "arc needs 'center'" : reader.error;
            return std::nullopt;
        }
        ArgReader fields{node, {}};
        if (!fields.get_number("radius", arc.radius) ||
            !fields.get_number("start_angle", arc.start_angle_deg) ||
            !fields.get_number("end_angle", arc.end_angle_deg)) {
            error = fields.error;
            return std::nullopt;
        }
        return geom::SketchElement{arc};
    }
    if (type == "circle") {
        geom::CircleElement circle;
        if (!node.contains("center") ||
            !reader.get_vec2(node["center"], "center", circle.center)) {
            error = reader.error.empty() ? "circle needs 'center'" : reader.error;
            return std::nullopt;
        }
        ArgReader fields{node, {}};
        if (!fields.get_number("radius", circle.radius)) {
            error = fields.error;
            return std::nullopt;
        }
        return geom::SketchElement{circle};
    }
    unsupported = "element type '" + type + "' is not supported";
    return std::nullopt;
}

InterfaceResult sketch_args_fail(geom::KernelError code, const std::string& detail) {
    return InterfaceResult::fail(code, msg::sketch_failed(detail));
}

InterfaceResult dispatch_impl(geom::Document& doc, const std::string& tool_name,
                              const json& args) {
    if (!args.is_object())
        return InterfaceResult::fail(geom::KernelError::invalid_element,
                                     msg::tool_failed(tool_name, "arguments must be an object"));
    ArgReader reader{args, {}};

    if (tool_name == kToolSetCoordSystem) {
        std::string name;
        Vec3 origin, rotation;
        if (!reader.get_string("name", name) || !reader.get_vec3("origin", origin) ||
            !reader.get_vec3("rotation", rotation))
            return InterfaceResult::fail(geom::KernelError::invalid_element,
                                         msg::tool_failed(tool_name, reader.error));
        return doc.set_coord_system(name, origin, rotation);
    }

    if (tool_name == kToolCreateComplexSketch || tool_name == kToolCreateSimpleSketch) {
        const bool simple = tool_name == kToolCreateSimpleSketch;
        std::string sketch_name, frame;
        if (!reader.get_string("sketch_name", sketch_name) ||
            !reader.get_string("frame", frame))
            return sketch_args_fail(geom::KernelError::invalid_element, reader.error);

        std::vector<geom::SketchElement> elements;
        const char* key = simple ? "element" : "elements";
        if (!args.contains(key))
            return sketch_args_fail(geom::KernelError::invalid_element,
                                    std::string("missing argument '") + key + "'");
        std::vector<json> nodes;
        if (simple) {
            nodes.push_back(args[key]);
        } else {
            if (!args[key].is_array())
                return sketch_args_fail(geom::KernelError::invalid_element,
                                        "'elements' must be an array");
            for (const auto& node : args[key]) nodes.push_back(node);
        }
        for (const auto& node : nodes) {
            std::string error, unsupported;
            auto element = decode_element(node, error, unsupported);
            if (!element) {
                if (!unsupported.empty())
                    return sketch_args_fail(geom::KernelError::unsupported_element, unsupported);
                return sketch_args_fail(geom::KernelError::invalid_element, error);
            }
            elements.push_back(std::move(*element));
        }
        if (simple) return doc.create_simple_sketch(elements.front(), sketch_name, frame);
        return doc.create_complex_sketch(elements, sketch_name, frame);
    }

    if (tool_name == kToolExtrudeFace) {
        std::string sketch_name, solid_name;
        double depth = 0.0;
        if (!reader.get_string("sketch_name", sketch_name) ||
            !reader.get_number("depth", depth) || !reader.get_string("solid_name", solid_name))
            return InterfaceResult::fail(geom::KernelError::invalid_element,
                                         msg::tool_failed(tool_name, reader.error));
        return doc.extrude_face(sketch_name, depth, solid_name);
    }

    if (tool_name == kToolBooleanOperation) {
        std::string base, tool, operation, name;
        if (!reader.get_string("base_object_name", base) ||
            !reader.get_string("tool_object_name", tool) ||
            !reader.get_string("operation", operation) || !reader.get_string("name", name))
            return InterfaceResult::fail(geom::KernelError::invalid_element,
                                         msg::tool_failed(tool_name, reader.error));
        return doc.boolean_operation(base, tool, operation, name);
    }

    if (tool_name == kToolMultipleFuse) {
        std::string name;
        if (!reader.get_string("name", name))
            return InterfaceResult::fail(geom::KernelError::invalid_element,
                                         msg::tool_failed(tool_name, reader.error));
        if (!args.contains("object_names") || !args["object_names"].is_array())
            return InterfaceResult::fail(
                geom::KernelError::invalid_element,
                msg::tool_failed(tool_name, "'object_names' must be an array of strings"));
        std::vector<std::string> names;
        for (const auto& node : args["object_names"]) {
            if (!node.is_string())
                return InterfaceResult::fail(
                    geom::KernelError::invalid_element,
                    msg::tool_failed(tool_name, "'object_names' must be an array of strings"));
            names.push_back(node.get<std::string>());
        }
        return doc.multiple_fuse(names, name);
    }

    return InterfaceResult::fail(geom::KernelError::unknown_object,
                                 msg::tool_failed(tool_name, "unknown tool"));
}

}  // namespace

json tool_descriptors() {
    json tools = json::array();

    tools.push_back(
        {{"name", kToolSetCoordSystem},
         {"description",
          "Registers a named coordinate system. origin is [x, y, z]; rotation is intrinsic "
          "Z-Y-X Euler angles [z, y, x] in degrees applied in that order."},
         {"inputSchema",
          object_schema({{"name", {{"type", "string"}}},
                         {"origin", vec_schema(3, "frame origin [x, y, z]")},
                         {"rotation", vec_schema(3, "Euler degrees [z, y, x]")}},
                        {"name", "origin", "rotation"})}});

    tools.push_back(
        {{"name", kToolCreateComplexSketch},
         {"description",
          "Creates a sketch from multiple elements (lines, arcs, circles) drawn in the XY "
          "plane of a registered coordinate system. Elements must chain into closed, "
          "non-self-intersecting loops."},
         {"inputSchema",
          object_schema({{"elements", {{"type", "array"}, {"items", element_schema()}}},
                         {"sketch_name", {{"type", "string"}}},
                         {"frame", {{"type", "string"}}}},
                        {"elements", "sketch_name", "frame"})}});

    tools.push_back(
        {{"name", kToolCreateSimpleSketch},
         {"description",
          "Creates a sketch from one self-closing element (a circle). A lone line or "
          "partial arc cannot close and is rejected."},
         {"inputSchema", object_schema({{"element", element_schema()},
                                        {"sketch_name", {{"type", "string"}}},
                                        {"frame", {{"type", "string"}}}},
                                       {"element", "sketch_name", "frame"})}});

    tools.push_back(
        {{"name", kToolBooleanOperation},
         {"description",
          "Performs a Boolean operation between two solids: cut subtracts the tool object "
          "from the base object, fuse merges them, common keeps their intersection. Both "
          "operands are consumed."},
         {"inputSchema",
          object_schema({{"base_object_name", {{"type", "string"}}},
                         {"tool_object_name", {{"type", "string"}}},
                         {"operation",
                          {{"type", "string"}, {"enum", {"cut", "fuse", "common"}}}},
                         {"name", {{"type", "string"}}}},
                        {"base_object_name", "tool_object_name", "operation", "name"})}});

    tools.push_back(
        {{"name", kToolMultipleFuse},
         {"description", "Fuses two or more solids into one. All operands are consumed."},
         {"inputSchema",
          object_schema({{"object_names",
                          {{"type", "array"}, {"items", {{"type", "string"}}}, {"minItems", 2}}},
                         {"name", {{"type", "string"}}}},
                        {"object_names", "name"})}});

    tools.push_back(
        {{"name", kToolExtrudeFace},
         {"description",
          "Extrudes a sketch by a positive depth along the +Z axis of its coordinate "
          "system, producing a solid."},
         {"inputSchema", object_schema({{"sketch_name", {{"type", "string"}}},
                                        {"depth", {{"type", "number"}}},
                                        {"solid_name", {{"type", "string"}}}},
                                       {"sketch_name", "depth", "solid_name"})}});

    return tools;
}

InterfaceResult run_guarded(const std::string& tool_name,
                            const std::function<InterfaceResult()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        if (tool_name == kToolCreateComplexSketch || tool_name == kToolCreateSimpleSketch)
            return InterfaceResult::fail(geom::KernelError::internal_error,
                                         msg::sketch_failed_internal(e.what()));
        return InterfaceResult::fail(geom::KernelError::internal_error,
                                     msg::internal_error(tool_name, e.what()));
    }
}

InterfaceResult dispatch_tool_call(geom::Document& doc, const std::string& tool_name,
                                   const json& arguments) {
    return run_guarded(tool_name, [&] { return dispatch_impl(doc, tool_name, arguments); });
}

}  // namespace cadgym::proto
