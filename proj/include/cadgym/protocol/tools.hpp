#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadgym/feedback/interface_result.hpp"
#include "cadgym/geometry/document.hpp"

namespace cadgym::proto {

inline constexpr const char* kToolSetCoordSystem = "freecad-set_coord_system";
inline constexpr const char* kToolCreateComplexSketch = "freecad-create_complex_sketch";
inline constexpr const char* kToolCreateSimpleSketch = "freecad-create_simple_sketch";
inline constexpr const char* kToolBooleanOperation = "freecad-boolean_operation";
inline constexpr const char* kToolMultipleFuse = "freecad-multiple_fuse";
inline constexpr const char* kToolExtrudeFace = "freecad-extrude_face";

/// The six tool names in their published order.
const std::vector<std::string>& tool_names();

bool is_known_tool(const std::string& name);

/// tools/list payload: name, description and argument schema per tool.
/// Byte-stable across calls within one build.
nlohmann::json tool_descriptors();

/// Decodes JSON arguments and invokes the matching document operation.
/// Argument problems and kernel exceptions come back as fail results, never
/// as thrown errors.
feedback::InterfaceResult dispatch_tool_call(geom::Document& doc, const std::string& tool_name,
                                             const nlohmann::json& arguments);

/// Runs fn, mapping a thrown std::exception to the internal-error template.
feedback::InterfaceResult run_guarded(const std::string& tool_name,
                                      const std::function<feedback::InterfaceResult()>& fn);

}  // namespace cadgym::proto
