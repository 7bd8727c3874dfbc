#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cadgym/geometry/document.hpp"
#include "cadgym/gym/task.hpp"
#include "cadgym/gym/trajectory.hpp"
#include "cadgym/protocol/tags.hpp"
#include "cadgym/reward/reward.hpp"

namespace cadgym::gym {

/// Objects assembled under this name are treated as the episode's final
/// model; otherwise the last live solid stands in.
inline constexpr const char* kFinalModelName = "FinalModel";
inline constexpr const char* kCompletedToken = "COMPLETED";

struct EpisodeConfig {
    int t_max = 40;  // turn budget
    int f_max = 5;   // consecutive tool failures before aborting
};

/// Live state of one episode. Single writer; independent of other episodes.
struct EpisodeState {
    Task task;
    geom::Document document;
    std::string system_prompt;
    std::vector<proto::TaggedSegment> transcript;
    std::string raw_log;  // verbatim agent output and injected responses
    int turn = 0;
    bool done = false;
    bool final_answer = false;
    int failure_streak = 0;
    std::vector<TrajectoryTurn> recorded_turns;
    EpisodeConfig config;

    EpisodeState() : document(geom::GeomConfig{}) {}
};

EpisodeState reset(Task task, std::string system_prompt, EpisodeConfig config = {},
                   geom::GeomConfig geom_config = {});

struct StepOutput {
    std::vector<feedback::Observation> observations;
    std::vector<int> step_rewards;
};

/// Parses one agent turn and executes its tool calls in order, appending
/// think/call/response segments to the transcript. Malformed output becomes
/// a fail observation, never an exception. Terminal when the answer token
/// arrives, the turn budget is spent, or failures pile up.
StepOutput step(EpisodeState& state, const std::string& agent_text);

/// Executes one call arriving over the wire protocol, where reasoning stays
/// on the client side; the call is recorded as a think-less turn.
feedback::Observation execute_remote_call(EpisodeState& state, const proto::ToolCall& call);

/// Resolves the final solid, judges the outcome and assembles the record.
/// The ground truth comes from replaying the task program.
TrajectoryRecord finalize(EpisodeState& state, const reward::TrajectoryJudge& judge,
                          const reward::RewardWeights& weights);

/// FinalModel if present and live, else the last live solid.
geom::SolidPtr resolve_final_solid(const geom::Document& doc);

struct ReplayFailure {
    std::size_t step_index = 0;
    std::string message;
};

/// Executes a tool program through the same kernel path as live episodes;
/// fails with the index of the first unsuccessful step.
Result<geom::SolidPtr, ReplayFailure> replay(const std::vector<proto::ToolCall>& program,
                                             geom::GeomConfig geom_config = {});

}  // namespace cadgym::gym
