#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadgym/core/result.hpp"
#include "cadgym/feedback/feedback.hpp"
#include "cadgym/protocol/tags.hpp"
#include "cadgym/reward/reward.hpp"

namespace cadgym::gym {

inline constexpr int kTrajectorySchemaVersion = 1;

enum class TrajectoryError {
    io_error,
    parse_error,
    schema_mismatch,
};

/// One recorded agent turn. Turns that failed to parse carry a single fail
/// observation with step reward 0 and no tool calls.
struct TrajectoryTurn {
    std::optional<std::string> think;
    std::vector<proto::ToolCall> tool_calls;
    std::vector<feedback::Observation> observations;
    std::vector<int> step_rewards;

    bool operator==(const TrajectoryTurn&) const = default;
};

struct TrajectoryRecord {
    std::string task_id;
    std::vector<TrajectoryTurn> turns;
    bool final_answer = false;
    reward::RewardBreakdown reward;
    std::string outcome;  // "success" | "fail"

    bool operator==(const TrajectoryRecord&) const = default;
};

std::vector<int> collect_step_rewards(const TrajectoryRecord& record);

nlohmann::json record_to_json(const TrajectoryRecord& record);
Result<TrajectoryRecord, TrajectoryError> record_from_json(const nlohmann::json& j);

/// One record per line; save and load are exact inverses.
std::string save_trajectory(const TrajectoryRecord& record);
Result<TrajectoryRecord, TrajectoryError> load_trajectory(const std::string& line);

Result<Unit, TrajectoryError> append_trajectory_file(const std::string& path,
                                                     const TrajectoryRecord& record);
/// Loads all records; errors carry the 1-based line number.
Result<std::vector<TrajectoryRecord>, TrajectoryError> load_trajectory_file(
    const std::string& path);

}  // namespace cadgym::gym
