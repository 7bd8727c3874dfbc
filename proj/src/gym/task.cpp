#include "cadgym/gym/task.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "cadgym/protocol/tools.hpp"

namespace cadgym::gym {

using nlohmann::json;

json task_to_json(const Task& task) {
    json program = json::array();
    for (const auto& call : task.ground_truth_program)
        program.push_back({{"name", call.name}, {"arguments", call.arguments}});
    return {{"schema_version", kTaskSchemaVersion},
            {"id", task.id},
            {"instruction", task.instruction},
            {"level", task.level},
            {"ground_truth_program", program}};
}

Result<Task, TaskError> task_from_json(const json& j) {
    using R = Result<Task, TaskError>;
    if (!j.is_object()) return R::err(TaskError::parse_error, "task must be a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        return R::err(TaskError::schema_mismatch, "missing schema_version");
    if (j["schema_version"].get<int>() != kTaskSchemaVersion)
        return R::err(TaskError::schema_mismatch,
                      "unsupported task schema_version " + j["schema_version"].dump());
    for (const char* key : {"id", "instruction"}) {
        if (!j.contains(key) || !j[key].is_string())
            return R::err(TaskError::parse_error, std::string("missing string field '") + key +
                                                      "'");
    }
    if (!j.contains("level") || !j["level"].is_number_integer() || j["level"].get<int>() < 1)
        return R::err(TaskError::parse_error, "'level' must be a positive integer");
    if (!j.contains("ground_truth_program") || !j["ground_truth_program"].is_array())
        return R::err(TaskError::parse_error, "'ground_truth_program' must be an array");

    Task task;
    task.id = j["id"].get<std::string>();
    task.instruction = j["instruction"].get<std::string>();
    task.level = j["level"].get<int>();
    int extrude_count = 0;
    for (const auto& node : j["ground_truth_program"]) {
        if (!node.is_object() || !node.contains("name") || !node["name"].is_string())
            return R::err(TaskError::parse_error, "program step needs a string 'name'");
        proto::ToolCall call;
        call.name = node["name"].get<std::string>();
        if (!proto::is_known_tool(call.name))
            return R::err(TaskError::invalid_task,
                          "program uses unknown tool '" + call.name + "'");
        if (node.contains("arguments")) {
            if (!node["arguments"].is_object())
                return R::err(TaskError::parse_error, "step 'arguments' must be an object");
            call.arguments = node["arguments"];
        }
        if (call.name == proto::kToolExtrudeFace) ++extrude_count;
        task.ground_truth_program.push_back(std::move(call));
    }
    if (extrude_count != task.level)
        return R::err(TaskError::invalid_task,
                      "level " + std::to_string(task.level) + " does not match the " +
                          std::to_string(extrude_count) + " extrude steps in the program");
    return R::ok(std::move(task));
}

Result<Task, TaskError> load_task(const std::string& path) {
    using R = Result<Task, TaskError>;
    std::ifstream in(path);
    if (!in) return R::err(TaskError::io_error, "cannot open task file " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        return R::err(TaskError::parse_error, "task file " + path + " is not valid JSON");
    auto task = task_from_json(j);
    if (!task) return R::err(task.error(), path + ": " + task.message());
    return task;
}

Result<std::vector<Task>, TaskError> load_task_dir(const std::string& dir) {
    using R = Result<std::vector<Task>, TaskError>;
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        return R::err(TaskError::io_error, dir + " is not a directory");
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());

    std::vector<Task> tasks;
    for (const auto& path : paths) {
        auto task = load_task(path);
        if (!task) return R::err(task.error(), task.message());
        tasks.push_back(task.take());
    }
    return R::ok(std::move(tasks));
}

}  // namespace cadgym::gym
