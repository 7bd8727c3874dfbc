#include "cadgym/feedback/feedback.hpp"

#include <cmath>
#include <cstdio>

namespace cadgym::feedback {

namespace msg {

std::string number(double v) {
    if (v == 0.0) return "0";  // avoids "-0"
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

static std::string triple(const Vec3& v) {
    return "(" + number(v.x) + ", " + number(v.y) + ", " + number(v.z) + ")";
}

std::string coord_system_created(const std::string& name, const Vec3& origin,
                                 const Vec3& rotation_deg) {
    return "Created coordinate system " + name + " at origin " + triple(origin) +
           " with rotation " + triple(rotation_deg) + " degrees.";
}

std::string sketch_created(const std::string& sketch_name, const std::string& face_name) {
    return "Successfully created sketch " + sketch_name + " and its sketch-derived face " +
           face_name + ".";
}

std::string sketch_failed(const std::string& detail) {
    return "Sketch creation failed: " + detail +
           ". Please try creating each profile loop one by one.";
}

std::string sketch_failed_internal(const std::string& detail) {
    return "Sketch creation failed due to an internal error: " + detail;
}

std::string solid_extruded(const std::string& solid_name, const std::string& sketch_name,
                           double depth) {
    return "Created solid " + solid_name + " by extruding sketch " + sketch_name +
           " to depth " + number(depth) + ".";
}

std::string boolean_succeeded(const std::string& name, const std::string& operation) {
    return "A new solid " + name + " was created by performing the Boolean operation " +
           operation + ".";
}

std::string boolean_failed(const std::string& operation, const std::string& base,
                           const std::string& tool, const std::string& error_detail) {
    return "The Boolean operation " + operation + " between base object " + base +
           " and tool object " + tool + " failed. Error: " + error_detail;
}

std::string multi_fuse_succeeded(const std::string& name, std::size_t count) {
    return "A new solid " + name + " was created by fusing " + std::to_string(count) +
           " objects.";
}

std::string tool_failed(const std::string& tool_name, const std::string& detail) {
    return tool_name + " failed: " + detail;
}

std::string internal_error(const std::string& tool_name, const std::string& detail) {
    return tool_name + " failed due to an internal error: " + detail;
}

}  // namespace msg

Observation render_feedback(const std::string& /*tool_name*/, const InterfaceResult& result,
                            const geom::Document& doc) {
    Observation obs;
    obs.label = result.success ? kLabelSuccess : kLabelFail;
    for (std::size_t i = 0; i < result.actions.size(); ++i) {
        if (i > 0) obs.message += " ";
        obs.message += result.actions[i];
    }
    obs.object_list = doc.snapshot();
    return obs;
}

geom::DocumentSnapshot object_list(const geom::Document& doc) { return doc.snapshot(); }

}  // namespace cadgym::feedback
