#pragma once

#include <string>

#include "cadgym/feedback/interface_result.hpp"
#include "cadgym/geometry/document.hpp"

namespace cadgym::feedback {

/// One observation handed back to the agent after a tool invocation:
/// binary label, deterministic message, and the geometric object list.
struct Observation {
    std::string label;  // "success" | "fail"
    std::string message;
    geom::DocumentSnapshot object_list;

    bool operator==(const Observation&) const = default;
};

inline constexpr const char* kLabelSuccess = "success";
inline constexpr const char* kLabelFail = "fail";

/// Frozen message templates. These strings are golden-tested; do not edit
/// without refreshing the fixtures.
namespace msg {

std::string number(double v);  // minimal deterministic formatting: 2, 0.5, 12.25

std::string coord_system_created(const std::string& name, const Vec3& origin,
                                 const Vec3& rotation_deg);
std::string sketch_created(const std::string& sketch_name, const std::string& face_name);
std::string sketch_failed(const std::string& detail);           // appends the retry hint
std::string sketch_failed_internal(const std::string& detail);  // internal error wording
std::string solid_extruded(const std::string& solid_name, const std::string& sketch_name,
                           double depth);
std::string boolean_succeeded(const std::string& name, const std::string& operation);
std::string boolean_failed(const std::string& operation, const std::string& base,
                           const std::string& tool, const std::string& error_detail);
std::string multi_fuse_succeeded(const std::string& name, std::size_t count);
std::string tool_failed(const std::string& tool_name, const std::string& detail);
std::string internal_error(const std::string& tool_name, const std::string& detail);

}  // namespace msg

/// Wraps a tool result into the observation recorded in the transcript.
/// The object list snapshots the document after the tool executed.
Observation render_feedback(const std::string& tool_name, const InterfaceResult& result,
                            const geom::Document& doc);

/// Creation-ordered object list with consumed flags.
geom::DocumentSnapshot object_list(const geom::Document& doc);

}  // namespace cadgym::feedback
