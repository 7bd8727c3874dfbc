#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cadgym/gym/episode.hpp"
#include "cadgym/gym/task.hpp"

namespace cadgym::gym {

enum class CorruptionMode { none, drop_step, perturb_param, swap_boolean };

const char* corruption_mode_name(CorruptionMode m);
std::optional<CorruptionMode> corruption_mode_from_name(const std::string& name);

struct ScriptedConfig {
    CorruptionMode corruption = CorruptionMode::none;
    double corruption_rate = 0.0;  // probability the corruption is applied
    std::uint64_t seed = 0;
    bool emit_think = true;  // replay mode drops the reasoning blocks
};

/// Turn source that walks a task's ground-truth program wrapped in canonical
/// tagged turns, optionally corrupted (one dropped step, one perturbed
/// scalar, or one swapped boolean operator). Deterministic per seed; an
/// uncorrupted run always reaches a successful outcome.
class ScriptedPolicy {
  public:
    ScriptedPolicy(const Task& task, ScriptedConfig config);

    /// Agent text for the next turn; nullopt once the answer was emitted.
    std::optional<std::string> next_turn(const EpisodeState& state);

    bool corruption_applied() const { return corruption_applied_; }
    const std::vector<proto::ToolCall>& program() const { return program_; }

  private:
    std::vector<proto::ToolCall> program_;  // post-corruption
    ScriptedConfig config_;
    std::size_t cursor_ = 0;
    bool answered_ = false;
    bool corruption_applied_ = false;
};

struct RolloutResult {
    TrajectoryRecord record;
    bool corruption_applied = false;
};

/// Runs a full episode of the scripted policy against a fresh document.
RolloutResult run_scripted_episode(const Task& task, const ScriptedConfig& scripted,
                                   const reward::TrajectoryJudge& judge,
                                   const reward::RewardWeights& weights,
                                   const EpisodeConfig& episode_config = {},
                                   const geom::GeomConfig& geom_config = {},
                                   const std::string& system_prompt = "");

}  // namespace cadgym::gym
