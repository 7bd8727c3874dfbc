#include "cadgym/protocol/rpc.hpp"

#include <istream>
#include <ostream>

#include "cadgym/gym/trajectory.hpp"
#include "cadgym/protocol/tags.hpp"
#include "cadgym/protocol/tools.hpp"

namespace cadgym::proto {

using nlohmann::json;

namespace {

json error_response(const json& id, int code, const std::string& message) {
    return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

json result_response(const json& id, json result) {
    return {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
}

}  // namespace

std::string handle_rpc_line(const std::string& line, gym::EpisodeState& session) {
    json request = json::parse(line, nullptr, false);
    if (request.is_discarded())
        return error_response(nullptr, kRpcParseError, "request line is not valid JSON").dump();
    if (!request.is_object())
        return error_response(nullptr, kRpcInvalidRequest, "request must be a JSON object")
            .dump();

    const json id = request.contains("id") ? request["id"] : json(nullptr);
    if (!request.contains("method") || !request["method"].is_string())
        return error_response(id, kRpcInvalidRequest, "request needs a string 'method'").dump();
    const std::string method = request["method"].get<std::string>();

    if (method == "tools/list")
        return result_response(id, {{"tools", tool_descriptors()}}).dump();

    if (method == "tools/call") {
        if (!request.contains("params") || !request["params"].is_object())
            return error_response(id, kRpcInvalidParams, "'params' must be an object").dump();
        const json& params = request["params"];
        if (!params.contains("name") || !params["name"].is_string())
            return error_response(id, kRpcInvalidParams, "'params.name' must be a string")
                .dump();
        ToolCall call;
        call.name = params["name"].get<std::string>();
        if (!is_known_tool(call.name))
            return error_response(id, kRpcInvalidParams,
                                  "'" + call.name + "' is not in the tool library")
                .dump();
        if (params.contains("arguments")) {
            if (!params["arguments"].is_object())
                return error_response(id, kRpcInvalidParams,
                                      "'params.arguments' must be an object")
                    .dump();
            call.arguments = params["arguments"];
        }
        const feedback::Observation obs = gym::execute_remote_call(session, call);
        return result_response(id, observation_to_json(obs)).dump();
    }

    return error_response(id, kRpcMethodNotFound, "unknown method '" + method + "'").dump();
}

int serve(std::istream& in, std::ostream& out, const ServeOptions& options) {
    gym::Task task;
    if (options.task) {
        task = *options.task;
    } else {
        task.id = "serve-session";
        task.level = 1;
    }
    gym::EpisodeState session =
        gym::reset(std::move(task), "", options.episode, options.geometry);

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out << handle_rpc_line(line, session) << "\n";
        out.flush();
    }

    if (!options.trajectory_path.empty()) {
        session.done = true;
        const reward::ReferenceJudge judge(options.judge_iou_threshold,
                                           options.judge_resolution);
        const gym::TrajectoryRecord record =
            gym::finalize(session, judge, options.weights);
        gym::append_trajectory_file(options.trajectory_path, record);
    }
    return 0;
}

}  // namespace cadgym::proto
