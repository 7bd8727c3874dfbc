#pragma once

#include <string>
#include <vector>

#include "cadgym/geometry/types.hpp"

namespace cadgym::feedback {

/// Tool-level outcome: a success flag plus one or more action descriptions.
/// The descriptions are the exact strings later surfaced to the agent.
struct InterfaceResult {
    bool success = false;
    std::vector<std::string> actions;
    geom::KernelError error = geom::KernelError::none;

    static InterfaceResult ok(std::string description) {
        return InterfaceResult{true, {std::move(description)}, geom::KernelError::none};
    }
    static InterfaceResult fail(geom::KernelError code, std::string description) {
        return InterfaceResult{false, {std::move(description)}, code};
    }
};

}  // namespace cadgym::feedback
