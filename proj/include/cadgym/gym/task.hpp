#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cadgym/core/result.hpp"
#include "cadgym/protocol/tags.hpp"

namespace cadgym::gym {

inline constexpr int kTaskSchemaVersion = 1;

enum class TaskError {
    io_error,
    parse_error,
    schema_mismatch,
    invalid_task,
};

/// One modeling task: instruction text, its part-count level, and the
/// ground-truth tool program that reproduces the target solid.
struct Task {
    std::string id;
    std::string instruction;
    int level = 1;  // number of extrude operations in the program
    std::vector<proto::ToolCall> ground_truth_program;
};

nlohmann::json task_to_json(const Task& task);
Result<Task, TaskError> task_from_json(const nlohmann::json& j);

Result<Task, TaskError> load_task(const std::string& path);

/// Loads every *.json task in the directory, sorted by filename.
Result<std::vector<Task>, TaskError> load_task_dir(const std::string& dir);

}  // namespace cadgym::gym
