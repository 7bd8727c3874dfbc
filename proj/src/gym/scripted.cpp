#include "cadgym/gym/scripted.hpp"

#include <functional>

#include "cadgym/core/rng.hpp"
#include "cadgym/protocol/tools.hpp"

namespace cadgym::gym {

using proto::ToolCall;

const char* corruption_mode_name(CorruptionMode m) {
    switch (m) {
        case CorruptionMode::none: return "none";
        case CorruptionMode::drop_step: return "drop-step";
        case CorruptionMode::perturb_param: return "perturb-param";
        case CorruptionMode::swap_boolean: return "swap-boolean";
    }
    return "unknown";
}

std::optional<CorruptionMode> corruption_mode_from_name(const std::string& name) {
    for (const CorruptionMode m : {CorruptionMode::none, CorruptionMode::drop_step,
                                   CorruptionMode::perturb_param, CorruptionMode::swap_boolean})
        if (name == corruption_mode_name(m)) return m;
    return std::nullopt;
}

namespace {

std::string describe_call(const ToolCall& call) {
    auto arg_string = [&](const char* key) {
        return call.arguments.contains(key) && call.arguments[key].is_string()
                   ? call.arguments[key].get<std::string>()
                   : std::string("?");
    };
    if (call.name == proto::kToolSetCoordSystem)
        return "Set up coordinate system " + arg_string("name") + " for the next part.";
    if (call.name == proto::kToolCreateComplexSketch ||
        call.name == proto::kToolCreateSimpleSketch)
        return "Draw the profile sketch " + arg_string("sketch_name") + " in frame " +
               arg_string("frame") + ".";
    if (call.name == proto::kToolExtrudeFace)
        return "Extrude sketch " + arg_string("sketch_name") + " into solid " +
               arg_string("solid_name") + ".";
    if (call.name == proto::kToolBooleanOperation)
        return "Apply the Boolean " + arg_string("operation") + " of " +
               arg_string("tool_object_name") + " on " + arg_string("base_object_name") +
               " producing " + arg_string("name") + ".";
    if (call.name == proto::kToolMultipleFuse)
        return "Fuse the finished parts into " + arg_string("name") + ".";
    return "Run " + call.name + ".";
}

/// Indices of numeric leaves in depth-first order, so a perturbation target
/// can be picked deterministically.
void visit_numbers(nlohmann::json& node, const std::function<void(nlohmann::json&)>& fn) {
    if (node.is_number()) {
        fn(node);
        return;
    }
    if (node.is_array() || node.is_object())
        for (auto& child : node) visit_numbers(child, fn);
}

int count_numbers(const nlohmann::json& node) {
    int count = 0;
    nlohmann::json copy = node;
    visit_numbers(copy, [&count](nlohmann::json&) { ++count; });
    return count;
}

}  // namespace

ScriptedPolicy::ScriptedPolicy(const Task& task, ScriptedConfig config)
    : program_(task.ground_truth_program), config_(config) {
    if (config_.corruption == CorruptionMode::none || config_.corruption_rate <= 0.0) return;

    Rng rng(config_.seed);
    if (rng.next_double() >= config_.corruption_rate) return;

    switch (config_.corruption) {
        case CorruptionMode::none:
            break;
        case CorruptionMode::drop_step: {
            if (program_.empty()) break;
            const std::size_t victim = rng.next_below(program_.size());
            program_.erase(program_.begin() + static_cast<std::ptrdiff_t>(victim));
            corruption_applied_ = true;
            break;
        }
        case CorruptionMode::perturb_param: {
            std::vector<std::size_t> eligible;
            for (std::size_t i = 0; i < program_.size(); ++i)
                if (count_numbers(program_[i].arguments) > 0) eligible.push_back(i);
            if (eligible.empty()) break;
            const std::size_t victim = eligible[rng.next_below(eligible.size())];
            const int target =
                static_cast<int>(rng.next_below(count_numbers(program_[victim].arguments)));
            int seen = 0;
            visit_numbers(program_[victim].arguments, [&](nlohmann::json& leaf) {
                if (seen++ != target) return;
                const double v = leaf.get<double>();
                leaf = std::abs(v) > 1e-9 ? v * 1.5 : 0.75;
            });
            corruption_applied_ = true;
            break;
        }
        case CorruptionMode::swap_boolean: {
            std::vector<std::size_t> eligible;
            for (std::size_t i = 0; i < program_.size(); ++i)
                if (program_[i].name == proto::kToolBooleanOperation) eligible.push_back(i);
            if (eligible.empty()) break;
            const std::size_t victim = eligible[rng.next_below(eligible.size())];
            auto& op = program_[victim].arguments["operation"];
            const std::string current = op.is_string() ? op.get<std::string>() : "";
            op = current == "fuse" ? "cut" : "fuse";  // common also flips to fuse
            corruption_applied_ = true;
            break;
        }
    }
}

std::optional<std::string> ScriptedPolicy::next_turn(const EpisodeState& /*state*/) {
    if (answered_) return std::nullopt;
    if (cursor_ < program_.size()) {
        const ToolCall& call = program_[cursor_++];
        proto::AgentTurn turn;
        if (config_.emit_think) turn.think = describe_call(call);
        turn.tool_calls.push_back(call);
        return proto::serialize_turn(turn);
    }
    answered_ = true;
    proto::AgentTurn terminal;
    if (config_.emit_think) terminal.think = "All parts are built and assembled; finishing.";
    terminal.answer = kCompletedToken;
    return proto::serialize_turn(terminal);
}

RolloutResult run_scripted_episode(const Task& task, const ScriptedConfig& scripted,
                                   const reward::TrajectoryJudge& judge,
                                   const reward::RewardWeights& weights,
                                   const EpisodeConfig& episode_config,
                                   const geom::GeomConfig& geom_config,
                                   const std::string& system_prompt) {
    ScriptedPolicy policy(task, scripted);
    EpisodeState state = reset(task, system_prompt, episode_config, geom_config);
    while (!state.done) {
        auto text = policy.next_turn(state);
        if (!text) break;
        step(state, *text);
    }
    RolloutResult result;
    result.record = finalize(state, judge, weights);
    result.corruption_applied = policy.corruption_applied();
    return result;
}

}  // namespace cadgym::gym
