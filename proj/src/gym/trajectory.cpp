#include "cadgym/gym/trajectory.hpp"

#include <fstream>

namespace cadgym::gym {

using nlohmann::json;

std::vector<int> collect_step_rewards(const TrajectoryRecord& record) {
    std::vector<int> rewards;
    for (const auto& turn : record.turns)
        rewards.insert(rewards.end(), turn.step_rewards.begin(), turn.step_rewards.end());
    return rewards;
}

json record_to_json(const TrajectoryRecord& record) {
    json turns = json::array();
    for (const auto& turn : record.turns) {
        json calls = json::array();
        for (const auto& call : turn.tool_calls)
            calls.push_back({{"name", call.name}, {"arguments", call.arguments}});
        json observations = json::array();
        for (const auto& obs : turn.observations)
            observations.push_back(proto::observation_to_json(obs));
        json t = {{"tool_calls", calls},
                  {"observations", observations},
                  {"step_rewards", turn.step_rewards}};
        if (turn.think) t["think"] = *turn.think;
        turns.push_back(std::move(t));
    }
    return {{"schema_version", kTrajectorySchemaVersion},
            {"task_id", record.task_id},
            {"turns", turns},
            {"final_answer", record.final_answer},
            {"reward",
             {{"orm", record.reward.orm},
              {"step_rewards", record.reward.step_rewards},
              {"step_mean", record.reward.step_mean},
              {"format", record.reward.format},
              {"total", record.reward.total}}},
            {"outcome", record.outcome}};
}

Result<TrajectoryRecord, TrajectoryError> record_from_json(const json& j) {
    using R = Result<TrajectoryRecord, TrajectoryError>;
    if (!j.is_object()) return R::err(TrajectoryError::parse_error, "record must be an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        return R::err(TrajectoryError::schema_mismatch, "missing schema_version");
    if (j["schema_version"].get<int>() != kTrajectorySchemaVersion)
        return R::err(TrajectoryError::schema_mismatch,
                      "unsupported trajectory schema_version " + j["schema_version"].dump());

    TrajectoryRecord record;
    try {
        record.task_id = j.at("task_id").get<std::string>();
        record.final_answer = j.at("final_answer").get<bool>();
        record.outcome = j.at("outcome").get<std::string>();
        const json& reward = j.at("reward");
        record.reward.orm = reward.at("orm").get<int>();
        record.reward.step_rewards = reward.at("step_rewards").get<std::vector<int>>();
        record.reward.step_mean = reward.at("step_mean").get<double>();
        record.reward.format = reward.at("format").get<int>();
        record.reward.total = reward.at("total").get<double>();
        for (const auto& t : j.at("turns")) {
            TrajectoryTurn turn;
            if (t.contains("think")) turn.think = t["think"].get<std::string>();
            for (const auto& c : t.at("tool_calls")) {
                proto::ToolCall call;
                call.name = c.at("name").get<std::string>();
                if (c.contains("arguments")) call.arguments = c["arguments"];
                turn.tool_calls.push_back(std::move(call));
            }
            for (const auto& o : t.at("observations")) {
                auto obs = proto::observation_from_json(o);
                if (!obs)
                    return R::err(TrajectoryError::parse_error,
                                  "bad observation: " + obs.message());
                turn.observations.push_back(obs.take());
            }
            turn.step_rewards = t.at("step_rewards").get<std::vector<int>>();
            record.turns.push_back(std::move(turn));
        }
    } catch (const json::exception& e) {
        return R::err(TrajectoryError::parse_error, e.what());
    }
    return R::ok(std::move(record));
}

std::string save_trajectory(const TrajectoryRecord& record) {
    return record_to_json(record).dump();
}

Result<TrajectoryRecord, TrajectoryError> load_trajectory(const std::string& line) {
    using R = Result<TrajectoryRecord, TrajectoryError>;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
        return R::err(TrajectoryError::parse_error, "line is not valid JSON");
    return record_from_json(j);
}

Result<Unit, TrajectoryError> append_trajectory_file(const std::string& path,
                                                     const TrajectoryRecord& record) {
    using R = Result<Unit, TrajectoryError>;
    std::ofstream out(path, std::ios::app);
    if (!out) return R::err(TrajectoryError::io_error, "cannot open " + path);
    out << save_trajectory(record) << "\n";
    return R::ok(Unit{});
}

Result<std::vector<TrajectoryRecord>, TrajectoryError> load_trajectory_file(
    const std::string& path) {
    using R = Result<std::vector<TrajectoryRecord>, TrajectoryError>;
    std::ifstream in(path);
    if (!in) return R::err(TrajectoryError::io_error, "cannot open " + path);
    std::vector<TrajectoryRecord> records;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        auto record = load_trajectory(line);
        if (!record)
            return R::err(record.error(),
                          path + ":" + std::to_string(line_number) + ": " + record.message());
        records.push_back(record.take());
    }
    return R::ok(std::move(records));
}

}  // namespace cadgym::gym
