#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cadgym/core/result.hpp"
#include "cadgym/geometry/types.hpp"
#include "cadgym/gym/episode.hpp"
#include "cadgym/metrics/metrics.hpp"
#include "cadgym/policy/curriculum.hpp"
#include "cadgym/policy/optim.hpp"
#include "cadgym/reward/reward.hpp"

namespace cadgym::cli {

enum class ConfigError { io_error, parse_error, unknown_key, out_of_range };

struct GrpoConfig {
    int group_size = 8;
    double clip_eps = 0.2;
    double kl_beta = 0.01;
    policy::BaselineMode baseline = policy::BaselineMode::mean;
};

struct CurriculumConfig {
    double alpha = 0.7;
    int window = 16;
    int n_update = 32;
    long max_iters_per_level = 1000;
    int levels = 5;
};

struct SyntheticPolicyConfig {
    double ppl0 = 10.0;
    double decay = 0.9;
};

struct Paths {
    std::string tasks_dir = "fixtures/tasks";
    std::string trajectory_out = "trajectories.jsonl";
    std::string report_out;  // empty: stdout only
};

/// Static run configuration; flags override file values, environment
/// variables override paths only (CADGYM_TASKS_DIR, CADGYM_TRAJECTORY_OUT,
/// CADGYM_REPORT_OUT).
struct Config {
    std::uint64_t seed = 12345;
    reward::RewardWeights weights;
    GrpoConfig grpo;
    CurriculumConfig curriculum;
    SyntheticPolicyConfig synthetic;
    geom::GeomConfig geometry;
    metrics::MetricConfig metric;
    gym::EpisodeConfig episode;
    double judge_iou_threshold = 0.95;
    Paths paths;
};

/// Strict parse: unknown keys and out-of-range values are rejected.
Result<Config, ConfigError> config_from_json(const nlohmann::json& j);
Result<Config, ConfigError> load_config(const std::string& path);

/// Applies CADGYM_* environment path overrides.
void apply_env_overrides(Config& config);

nlohmann::json config_to_json(const Config& config);

}  // namespace cadgym::cli
