#include "cadgym/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace cadgym::cli {

using nlohmann::json;

namespace {

using CfgResult = Result<Config, ConfigError>;

struct Checker {
    std::string error;

    bool unknown_keys(const json& node, const std::set<std::string>& allowed,
                      const std::string& where) {
        for (const auto& [key, _] : node.items()) {
            if (!allowed.count(key)) {
                error = "unknown key '" + key + "' in " + where;
                return true;
            }
        }
        return false;
    }

    bool range(bool ok, const std::string& what) {
        if (!ok) error = what;
        return !ok;
    }
};

template <typename T>
void read(const json& node, const char* key, T& out) {
    if (node.contains(key)) out = node[key].get<T>();
}

}  // namespace

Result<Config, ConfigError> config_from_json(const json& j) {
    Config cfg;
    Checker check;
    if (!j.is_object()) return CfgResult::err(ConfigError::parse_error, "config must be an object");
    if (check.unknown_keys(j,
                           {"seed", "reward", "grpo", "curriculum", "synthetic", "geometry",
                            "metrics", "episode", "judge_iou_threshold", "paths"},
                           "config"))
        return CfgResult::err(ConfigError::unknown_key, check.error);

    try {
        read(j, "seed", cfg.seed);
        read(j, "judge_iou_threshold", cfg.judge_iou_threshold);

        if (j.contains("reward")) {
            const json& node = j["reward"];
            if (check.unknown_keys(node, {"alpha", "beta", "gamma"}, "reward"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "alpha", cfg.weights.alpha);
            read(node, "beta", cfg.weights.beta);
            read(node, "gamma", cfg.weights.gamma);
        }
        if (j.contains("grpo")) {
            const json& node = j["grpo"];
            if (check.unknown_keys(node, {"group_size", "clip_eps", "kl_beta", "baseline"},
                                   "grpo"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "group_size", cfg.grpo.group_size);
            read(node, "clip_eps", cfg.grpo.clip_eps);
            read(node, "kl_beta", cfg.grpo.kl_beta);
            if (node.contains("baseline")) {
                const std::string mode = node["baseline"].get<std::string>();
                if (mode == "mean") cfg.grpo.baseline = policy::BaselineMode::mean;
                else if (mode == "max") cfg.grpo.baseline = policy::BaselineMode::max;
                else
                    return CfgResult::err(ConfigError::out_of_range,
                                          "grpo.baseline must be 'mean' or 'max'");
            }
        }
        if (j.contains("curriculum")) {
            const json& node = j["curriculum"];
            if (check.unknown_keys(node,
                                   {"alpha", "window", "n_update", "max_iters_per_level",
                                    "levels"},
                                   "curriculum"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "alpha", cfg.curriculum.alpha);
            read(node, "window", cfg.curriculum.window);
            read(node, "n_update", cfg.curriculum.n_update);
            read(node, "max_iters_per_level", cfg.curriculum.max_iters_per_level);
            read(node, "levels", cfg.curriculum.levels);
        }
        if (j.contains("synthetic")) {
            const json& node = j["synthetic"];
            if (check.unknown_keys(node, {"ppl0", "decay"}, "synthetic"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "ppl0", cfg.synthetic.ppl0);
            read(node, "decay", cfg.synthetic.decay);
        }
        if (j.contains("geometry")) {
            const json& node = j["geometry"];
            if (check.unknown_keys(
                    node, {"arc_segments", "loop_close_tol", "eps_geom", "probe_resolution"},
                    "geometry"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "arc_segments", cfg.geometry.arc_segments);
            read(node, "loop_close_tol", cfg.geometry.loop_close_tol);
            read(node, "eps_geom", cfg.geometry.eps_geom);
            read(node, "probe_resolution", cfg.geometry.probe_resolution);
        }
        if (j.contains("metrics")) {
            const json& node = j["metrics"];
            if (check.unknown_keys(
                    node, {"sample_count", "voxel_resolution", "jsd_resolution", "jsd_smoothing"},
                    "metrics"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "sample_count", cfg.metric.sample_count);
            read(node, "voxel_resolution", cfg.metric.voxel_resolution);
            read(node, "jsd_resolution", cfg.metric.jsd_resolution);
            read(node, "jsd_smoothing", cfg.metric.jsd_smoothing);
        }
        if (j.contains("episode")) {
            const json& node = j["episode"];
            if (check.unknown_keys(node, {"t_max", "f_max"}, "episode"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "t_max", cfg.episode.t_max);
            read(node, "f_max", cfg.episode.f_max);
        }
        if (j.contains("paths")) {
            const json& node = j["paths"];
            if (check.unknown_keys(node, {"tasks_dir", "trajectory_out", "report_out"}, "paths"))
                return CfgResult::err(ConfigError::unknown_key, check.error);
            read(node, "tasks_dir", cfg.paths.tasks_dir);
            read(node, "trajectory_out", cfg.paths.trajectory_out);
            read(node, "report_out", cfg.paths.report_out);
        }
    } catch (const json::exception& e) {
        return CfgResult::err(ConfigError::parse_error, e.what());
    }

    if (check.range(cfg.weights.valid(), "reward weights must be >= 0 with a positive sum") ||
        check.range(cfg.grpo.group_size >= 2, "grpo.group_size must be >= 2") ||
        check.range(cfg.grpo.clip_eps > 0.0 && cfg.grpo.clip_eps < 1.0,
                    "grpo.clip_eps must lie in (0, 1)") ||
        check.range(cfg.grpo.kl_beta >= 0.0, "grpo.kl_beta must be >= 0") ||
        check.range(cfg.curriculum.alpha > 0.0 && cfg.curriculum.alpha < 1.0,
                    "curriculum.alpha must lie in (0, 1)") ||
        check.range(cfg.curriculum.window >= 1, "curriculum.window must be >= 1") ||
        check.range(cfg.curriculum.n_update >= 1, "curriculum.n_update must be >= 1") ||
        check.range(cfg.curriculum.levels >= 1, "curriculum.levels must be >= 1") ||
        check.range(cfg.curriculum.max_iters_per_level >= 1,
                    "curriculum.max_iters_per_level must be >= 1") ||
        check.range(cfg.synthetic.ppl0 > 0.0, "synthetic.ppl0 must be > 0") ||
        check.range(cfg.synthetic.decay > 0.0 && cfg.synthetic.decay < 1.0,
                    "synthetic.decay must lie in (0, 1)") ||
        check.range(cfg.geometry.arc_segments >= 8, "geometry.arc_segments must be >= 8") ||
        check.range(cfg.geometry.loop_close_tol > 0.0, "geometry.loop_close_tol must be > 0") ||
        check.range(cfg.metric.sample_count >= 1, "metrics.sample_count must be >= 1") ||
        check.range(cfg.metric.voxel_resolution >= 8,
                    "metrics.voxel_resolution must be >= 8") ||
        check.range(cfg.metric.jsd_resolution >= 4, "metrics.jsd_resolution must be >= 4") ||
        check.range(cfg.episode.t_max >= 1, "episode.t_max must be >= 1") ||
        check.range(cfg.episode.f_max >= 1, "episode.f_max must be >= 1") ||
        check.range(cfg.judge_iou_threshold > 0.0 && cfg.judge_iou_threshold <= 1.0,
                    "judge_iou_threshold must lie in (0, 1]"))
        return CfgResult::err(ConfigError::out_of_range, check.error);

    return CfgResult::ok(std::move(cfg));
}

Result<Config, ConfigError> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) return CfgResult::err(ConfigError::io_error, "cannot open config " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        return CfgResult::err(ConfigError::parse_error, path + " is not valid JSON");
    auto cfg = config_from_json(j);
    if (!cfg) return CfgResult::err(cfg.error(), path + ": " + cfg.message());
    return cfg;
}

void apply_env_overrides(Config& config) {
    if (const char* v = std::getenv("CADGYM_TASKS_DIR")) config.paths.tasks_dir = v;
    if (const char* v = std::getenv("CADGYM_TRAJECTORY_OUT")) config.paths.trajectory_out = v;
    if (const char* v = std::getenv("CADGYM_REPORT_OUT")) config.paths.report_out = v;
}

json config_to_json(const Config& cfg) {
    return {{"seed", cfg.seed},
            {"reward",
             {{"alpha", cfg.weights.alpha},
              {"beta", cfg.weights.beta},
              {"gamma", cfg.weights.gamma}}},
            {"grpo",
             {{"group_size", cfg.grpo.group_size},
              {"clip_eps", cfg.grpo.clip_eps},
              {"kl_beta", cfg.grpo.kl_beta},
              {"baseline",
               cfg.grpo.baseline == policy::BaselineMode::mean ? "mean" : "max"}}},
            {"curriculum",
             {{"alpha", cfg.curriculum.alpha},
              {"window", cfg.curriculum.window},
              {"n_update", cfg.curriculum.n_update},
              {"max_iters_per_level", cfg.curriculum.max_iters_per_level},
              {"levels", cfg.curriculum.levels}}},
            {"synthetic", {{"ppl0", cfg.synthetic.ppl0}, {"decay", cfg.synthetic.decay}}},
            {"geometry",
             {{"arc_segments", cfg.geometry.arc_segments},
              {"loop_close_tol", cfg.geometry.loop_close_tol},
              {"eps_geom", cfg.geometry.eps_geom},
              {"probe_resolution", cfg.geometry.probe_resolution}}},
            {"metrics",
             {{"sample_count", cfg.metric.sample_count},
              {"voxel_resolution", cfg.metric.voxel_resolution},
              {"jsd_resolution", cfg.metric.jsd_resolution},
              {"jsd_smoothing", cfg.metric.jsd_smoothing}}},
            {"episode", {{"t_max", cfg.episode.t_max}, {"f_max", cfg.episode.f_max}}},
            {"judge_iou_threshold", cfg.judge_iou_threshold},
            {"paths",
             {{"tasks_dir", cfg.paths.tasks_dir},
              {"trajectory_out", cfg.paths.trajectory_out},
              {"report_out", cfg.paths.report_out}}}};
}

}  // namespace cadgym::cli
