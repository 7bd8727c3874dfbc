#include "cadgym/gym/episode.hpp"

#include "cadgym/protocol/tools.hpp"

namespace cadgym::gym {

using feedback::Observation;
using proto::SegmentKind;

EpisodeState reset(Task task, std::string system_prompt, EpisodeConfig config,
                   geom::GeomConfig geom_config) {
    EpisodeState state;
    state.task = std::move(task);
    state.document = geom::Document(geom_config);
    state.system_prompt = std::move(system_prompt);
    state.raw_log = state.system_prompt;
    if (!state.raw_log.empty()) state.raw_log += "\n";
    state.raw_log += state.task.instruction + "\n";
    state.config = config;
    return state;
}

namespace {

/// Shared execution path of one tool call: transcript segments, dispatch,
/// feedback, reward and failure-streak bookkeeping.
Observation run_call(EpisodeState& state, const proto::ToolCall& call, TrajectoryTurn& record) {
    nlohmann::json body = {{"name", call.name}, {"arguments", call.arguments}};
    state.transcript.push_back({SegmentKind::tool_call, body.dump()});

    const feedback::InterfaceResult result =
        proto::dispatch_tool_call(state.document, call.name, call.arguments);
    Observation obs = feedback::render_feedback(call.name, result, state.document);
    state.transcript.push_back(
        {SegmentKind::tool_response, proto::observation_to_json(obs).dump()});
    state.raw_log += proto::render_tool_response(obs) + "\n";

    const int reward = reward::step_reward(obs);
    record.tool_calls.push_back(call);
    record.observations.push_back(obs);
    record.step_rewards.push_back(reward);
    state.failure_streak = reward == 1 ? 0 : state.failure_streak + 1;
    return obs;
}

}  // namespace

StepOutput step(EpisodeState& state, const std::string& agent_text) {
    StepOutput output;
    if (state.done) return output;

    ++state.turn;
    state.raw_log += agent_text + "\n";

    TrajectoryTurn record;
    auto parsed = proto::parse_agent_output(agent_text);
    if (!parsed) {
        Observation obs;
        obs.label = feedback::kLabelFail;
        obs.message = "Invalid agent output (" +
                      std::string(proto::parse_error_name(parsed.error())) +
                      "): " + parsed.message();
        obs.object_list = state.document.snapshot();
        state.transcript.push_back(
            {SegmentKind::tool_response, proto::observation_to_json(obs).dump()});
        state.raw_log += proto::render_tool_response(obs) + "\n";
        record.observations.push_back(obs);
        record.step_rewards.push_back(0);
        output.observations.push_back(std::move(obs));
        output.step_rewards.push_back(0);
        ++state.failure_streak;
    } else {
        const proto::AgentTurn& turn = parsed.value();
        if (turn.think) {
            state.transcript.push_back({SegmentKind::think, *turn.think});
            record.think = turn.think;
        }
        if (turn.answer) {
            state.transcript.push_back({SegmentKind::answer, *turn.answer});
            state.final_answer = *turn.answer == kCompletedToken;
            state.done = true;
        }
        for (const auto& call : turn.tool_calls) {
            Observation obs = run_call(state, call, record);
            output.step_rewards.push_back(record.step_rewards.back());
            output.observations.push_back(std::move(obs));
        }
    }
    state.recorded_turns.push_back(std::move(record));

    if (state.turn >= state.config.t_max) state.done = true;
    if (state.failure_streak >= state.config.f_max) state.done = true;
    return output;
}

Observation execute_remote_call(EpisodeState& state, const proto::ToolCall& call) {
    ++state.turn;
    TrajectoryTurn record;
    Observation obs = run_call(state, call, record);
    state.recorded_turns.push_back(std::move(record));
    return obs;
}

geom::SolidPtr resolve_final_solid(const geom::Document& doc) {
    if (auto named = doc.find_solid(kFinalModelName); named && !doc.is_consumed(kFinalModelName))
        return named;
    return doc.last_live_solid();
}

TrajectoryRecord finalize(EpisodeState& state, const reward::TrajectoryJudge& judge,
                          const reward::RewardWeights& weights) {
    TrajectoryRecord record;
    record.task_id = state.task.id;
    record.turns = state.recorded_turns;
    record.final_answer = state.final_answer;

    const int format = reward::format_reward(proto::validate_format(state.transcript));

    geom::SolidPtr final_solid = resolve_final_solid(state.document);
    geom::SolidPtr ground_truth;
    if (!state.task.ground_truth_program.empty()) {
        auto replayed = replay(state.task.ground_truth_program, state.document.config());
        if (replayed) ground_truth = replayed.take();
    }

    const reward::JudgeVerdict verdict =
        judge.judge(state.task.instruction, record, final_solid.get(), ground_truth.get());
    const int orm = reward::orm_reward(verdict);

    std::vector<int> step_rewards;
    for (const auto& turn : record.turns)
        step_rewards.insert(step_rewards.end(), turn.step_rewards.begin(),
                            turn.step_rewards.end());
    record.reward = reward::aggregate_reward(orm, step_rewards, format, weights);
    record.outcome = (state.final_answer && orm == 1) ? "success" : "fail";
    return record;
}

Result<geom::SolidPtr, ReplayFailure> replay(const std::vector<proto::ToolCall>& program,
                                             geom::GeomConfig geom_config) {
    using R = Result<geom::SolidPtr, ReplayFailure>;
    geom::Document doc(geom_config);
    for (std::size_t i = 0; i < program.size(); ++i) {
        const feedback::InterfaceResult result =
            proto::dispatch_tool_call(doc, program[i].name, program[i].arguments);
        if (!result.success) {
            std::string detail = result.actions.empty() ? "" : result.actions.front();
            return R::err(ReplayFailure{i, detail},
                          "step " + std::to_string(i) + " failed: " + detail);
        }
    }
    geom::SolidPtr final_solid = resolve_final_solid(doc);
    if (!final_solid)
        return R::err(ReplayFailure{program.size(), "no live solid after replay"},
                      "program produced no live solid");
    return R::ok(std::move(final_solid));
}

}  // namespace cadgym::gym
