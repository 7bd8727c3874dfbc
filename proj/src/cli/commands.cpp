#include "cadgym/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cadgym/gym/prompts.hpp"
#include "cadgym/gym/scripted.hpp"
#include "cadgym/gym/task.hpp"
#include "cadgym/metrics/metrics.hpp"
#include "cadgym/policy/curriculum.hpp"
#include "cadgym/policy/policy.hpp"
#include "cadgym/protocol/rpc.hpp"
#include "cadgym/protocol/tools.hpp"

namespace cadgym::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(6) << v;
    return out.str();
}

Result<gym::Task, gym::TaskError> load_program_file(const std::string& path) {
    using R = Result<gym::Task, gym::TaskError>;
    std::ifstream in(path);
    if (!in) return R::err(gym::TaskError::io_error, "cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        return R::err(gym::TaskError::parse_error, path + " is not valid JSON");
    if (j.is_object() && j.contains("ground_truth_program")) return gym::task_from_json(j);
    // Bare program form: {"id": ..., "program": [...]}
    if (!j.is_object() || !j.contains("program") || !j["program"].is_array())
        return R::err(gym::TaskError::parse_error,
                      path + " is neither a task file nor a bare program file");
    gym::Task task;
    task.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>()
                                                      : fs::path(path).stem().string();
    int extrudes = 0;
    for (const auto& node : j["program"]) {
        if (!node.is_object() || !node.contains("name") || !node["name"].is_string())
            return R::err(gym::TaskError::parse_error, path + ": bad program step");
        proto::ToolCall call;
        call.name = node["name"].get<std::string>();
        if (node.contains("arguments")) call.arguments = node["arguments"];
        if (call.name == proto::kToolExtrudeFace) ++extrudes;
        task.ground_truth_program.push_back(std::move(call));
    }
    task.level = std::max(1, extrudes);
    return R::ok(std::move(task));
}

std::vector<std::string> sorted_json_files(const std::string& dir) {
    std::vector<std::string> paths;
    if (!fs::is_directory(dir)) return paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    return paths;
}

struct EvalItem {
    std::string id;
    gym::Task task;
    geom::SolidPtr solid;                       // null when replay failed
    std::optional<metrics::PointCloud> cloud;   // normalized, absent when invalid
    std::optional<double> parameter_density;
};

std::vector<EvalItem> load_eval_dir(const std::string& dir, const Config& config,
                                    std::ostream& err) {
    std::vector<EvalItem> items;
    for (const auto& path : sorted_json_files(dir)) {
        auto task = load_program_file(path);
        if (!task) {
            err << "skipping " << path << ": " << task.message() << "\n";
            continue;
        }
        EvalItem item;
        item.task = task.take();
        item.id = item.task.id;
        auto replayed = gym::replay(item.task.ground_truth_program, config.geometry);
        if (replayed) {
            item.solid = replayed.take();
            auto cloud = metrics::sample_points(*item.solid, config.metric.sample_count,
                                                config.seed, config.metric.voxel_resolution);
            if (cloud) item.cloud = metrics::normalize(cloud.take());
        }
        int extrudes = 0;
        for (const auto& call : item.task.ground_truth_program)
            if (call.name == proto::kToolExtrudeFace) ++extrudes;
        if (extrudes > 0) {
            auto pd = metrics::parameter_density(item.task.ground_truth_program, extrudes);
            if (pd) item.parameter_density = pd.value();
        }
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace

int cmd_serve(const Config& config, std::istream& in, std::ostream& out,
              const std::string& task_path) {
    proto::ServeOptions options;
    options.episode = config.episode;
    options.geometry = config.geometry;
    options.weights = config.weights;
    options.judge_iou_threshold = config.judge_iou_threshold;
    options.judge_resolution = config.metric.voxel_resolution;
    options.trajectory_path = config.paths.trajectory_out;
    if (!task_path.empty()) {
        auto task = gym::load_task(task_path);
        if (!task) {
            std::cerr << task.message() << "\n";
            return kExitUsage;
        }
        options.task = task.take();
    }
    return proto::serve(in, out, options);
}

int cmd_rollout(const Config& config, const RolloutArgs& args, std::ostream& out,
                std::ostream& err) {
    std::vector<gym::Task> tasks;
    if (!args.task_path.empty()) {
        auto task = gym::load_task(args.task_path);
        if (!task) {
            err << task.message() << "\n";
            return kExitUsage;
        }
        tasks.push_back(task.take());
    } else if (!args.task_dir.empty()) {
        auto loaded = gym::load_task_dir(args.task_dir);
        if (!loaded) {
            err << loaded.message() << "\n";
            return kExitUsage;
        }
        tasks = loaded.take();
    } else {
        err << "rollout needs --task or --task-dir\n";
        return kExitUsage;
    }
    if (args.policy != "scripted" && args.policy != "replay") {
        err << "unknown policy '" << args.policy << "' (expected scripted or replay)\n";
        return kExitUsage;
    }
    const auto corruption = gym::corruption_mode_from_name(args.corruption);
    if (!corruption) {
        err << "unknown corruption mode '" << args.corruption << "'\n";
        return kExitUsage;
    }

    const std::string out_path =
        args.out_path.empty() ? config.paths.trajectory_out : args.out_path;
    if (!out_path.empty()) std::ofstream(out_path, std::ios::trunc).flush();

    const reward::ReferenceJudge judge(config.judge_iou_threshold,
                                       config.metric.voxel_resolution);
    bool all_ok = true;
    for (const auto& task : tasks) {
        gym::ScriptedConfig scripted;
        scripted.corruption = *corruption;
        scripted.corruption_rate = *corruption == gym::CorruptionMode::none
                                       ? 0.0
                                       : args.corruption_rate;
        scripted.seed = args.seed.value_or(config.seed);
        scripted.emit_think = args.policy == "scripted";

        const gym::RolloutResult result = gym::run_scripted_episode(
            task, scripted, judge, config.weights, config.episode, config.geometry,
            gym::agent_system_prompt());

        if (!out_path.empty()) {
            auto appended = gym::append_trajectory_file(out_path, result.record);
            if (!appended) {
                err << appended.message() << "\n";
                return kExitDomainFailure;
            }
        }

        json summary = {{"task", task.id},
                        {"outcome", result.record.outcome},
                        {"corruption", gym::corruption_mode_name(*corruption)},
                        {"corruption_applied", result.corruption_applied},
                        {"reward",
                         {{"orm", result.record.reward.orm},
                          {"step_mean", result.record.reward.step_mean},
                          {"format", result.record.reward.format},
                          {"total", result.record.reward.total}}}};
        out << summary.dump() << "\n";
        if (result.record.outcome != "success") all_ok = false;
    }
    // Corrupted batches are expected to fail; only clean runs gate the code.
    if (*corruption != gym::CorruptionMode::none) return kExitOk;
    return all_ok ? kExitOk : kExitDomainFailure;
}

int cmd_eval(const Config& config, const EvalArgs& args, std::ostream& out,
             std::ostream& err) {
    if (args.generated_dir.empty() || args.reference_dir.empty()) {
        err << "eval needs --generated and --reference directories\n";
        return kExitUsage;
    }
    std::vector<EvalItem> generated = load_eval_dir(args.generated_dir, config, err);
    std::vector<EvalItem> reference = load_eval_dir(args.reference_dir, config, err);
    if (generated.empty() || reference.empty()) {
        err << "both directories must contain at least one program\n";
        return kExitDomainFailure;
    }

    std::vector<metrics::EpisodeOutcome> outcomes;
    for (const auto& item : generated)
        outcomes.push_back({item.solid != nullptr, item.cloud.has_value(), true});
    const double ir = metrics::invalidity_ratio(outcomes);

    // Pairwise metrics over index-aligned items (sorted by filename).
    json pairs = json::array();
    double cd_acc = 0, iou_acc = 0, jsd_acc = 0;
    int pair_count = 0;
    const std::size_t n_pairs = std::min(generated.size(), reference.size());
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const EvalItem& g = generated[i];
        const EvalItem& r = reference[i];
        json pair = {{"generated", g.id}, {"reference", r.id}};
        if (g.cloud && r.cloud && g.solid && r.solid) {
            const double cd = metrics::chamfer(*g.cloud, *r.cloud).value();
            const double overlap =
                metrics::iou(*g.solid, *r.solid, config.metric.voxel_resolution);
            Aabb3 bounds = geom::shared_bounds(*g.solid, *r.solid,
                                                     config.metric.jsd_resolution);
            const auto pg = metrics::voxel_distribution(*g.solid, bounds,
                                                        config.metric.jsd_resolution,
                                                        config.metric.jsd_smoothing);
            const auto pr = metrics::voxel_distribution(*r.solid, bounds,
                                                        config.metric.jsd_resolution,
                                                        config.metric.jsd_smoothing);
            const double divergence = metrics::jsd(pg.value(), pr.value()).value();
            pair["cd"] = cd;
            pair["iou"] = overlap;
            pair["jsd"] = divergence;
            pair["jsd_x100"] = divergence * 100.0;
            cd_acc += cd;
            iou_acc += overlap;
            jsd_acc += divergence;
            ++pair_count;
        } else {
            pair["invalid"] = true;
        }
        if (g.parameter_density) pair["pd_generated"] = *g.parameter_density;
        pairs.push_back(std::move(pair));
    }

    // Set-level metrics over the valid clouds.
    std::vector<metrics::PointCloud> g_clouds, r_clouds;
    for (const auto& item : generated)
        if (item.cloud) g_clouds.push_back(*item.cloud);
    for (const auto& item : reference)
        if (item.cloud) r_clouds.push_back(*item.cloud);
    std::optional<double> mmd_value, cov_value;
    if (!g_clouds.empty() && !r_clouds.empty()) {
        mmd_value = metrics::mmd(g_clouds, r_clouds).value();
        cov_value = metrics::cov(g_clouds, r_clouds).value();
    }

    double pd_acc = 0;
    int pd_count = 0;
    for (const auto& item : generated)
        if (item.parameter_density) {
            pd_acc += *item.parameter_density;
            ++pd_count;
        }

    json aggregate = {{"ir", ir}, {"pairs_scored", pair_count}};
    if (pair_count > 0) {
        aggregate["cd_mean"] = cd_acc / pair_count;
        aggregate["iou_mean"] = iou_acc / pair_count;
        aggregate["jsd_mean"] = jsd_acc / pair_count;
        aggregate["jsd_mean_x100"] = jsd_acc / pair_count * 100.0;
    }
    if (mmd_value) aggregate["mmd"] = *mmd_value;
    if (cov_value) aggregate["cov"] = *cov_value;
    if (pd_count > 0) aggregate["pd_mean"] = pd_acc / pd_count;

    json report = {{"seed", config.seed}, {"aggregate", aggregate}, {"pairs", pairs}};

    out << "metric      value\n";
    out << "IR          " << fmt(ir) << "\n";
    if (pair_count > 0) {
        out << "CD(mean)    " << fmt(cd_acc / pair_count) << "\n";
        out << "IoU(mean)   " << fmt(iou_acc / pair_count) << "\n";
        out << "JSD(mean)   " << fmt(jsd_acc / pair_count) << "\n";
    }
    if (mmd_value) out << "MMD         " << fmt(*mmd_value) << "\n";
    if (cov_value) out << "COV         " << fmt(*cov_value) << "\n";
    if (pd_count > 0) out << "PD(mean)    " << fmt(pd_acc / pd_count) << "\n";

    const std::string report_path =
        args.report_path.empty() ? config.paths.report_out : args.report_path;
    if (!report_path.empty()) {
        std::ofstream file(report_path, std::ios::trunc);
        if (!file) {
            err << "cannot write report to " << report_path << "\n";
            return kExitDomainFailure;
        }
        file << report.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_train_sim(const Config& config, const TrainSimArgs& args, std::ostream& out,
                  std::ostream& err) {
    const double ppl0 = args.ppl0.value_or(config.synthetic.ppl0);
    const double decay = args.decay.value_or(config.synthetic.decay);
    const double alpha = args.alpha.value_or(config.curriculum.alpha);
    if (ppl0 <= 0 || decay <= 0 || decay >= 1 || alpha <= 0 || alpha >= 1) {
        err << "train-sim needs ppl0 > 0, decay in (0,1), alpha in (0,1)\n";
        return kExitUsage;
    }

    policy::SyntheticDecayPolicy synthetic(ppl0, decay);
    const int validation_size = 8;
    const auto level_source = [&](int) { return synthetic.validation_ppls(validation_size); };

    policy::CurriculumState state;
    state.max_level = config.curriculum.levels;
    state.alpha = alpha;
    state.window = config.curriculum.window;
    state.n_update = config.curriculum.n_update;
    state.max_iters_per_level = config.curriculum.max_iters_per_level;
    state.threshold = policy::compute_threshold(level_source(1), alpha).value();

    std::ofstream trace;
    if (!args.trace_path.empty()) trace.open(args.trace_path, std::ios::trunc);
    auto emit = [&](const json& event) {
        if (trace.is_open()) trace << event.dump() << "\n";
    };

    emit({{"event", "level_start"}, {"level", state.level}, {"delta", state.threshold}});
    std::vector<double> buffered_ppls;
    std::vector<json> level_summary;
    long total_steps = 0;
    long level_steps = 0;

    while (!state.finished() && !state.stalled) {
        const double ppl = synthetic.rollout_ppl();
        buffered_ppls.push_back(ppl);
        ++total_steps;
        ++level_steps;
        const double delta_before = state.threshold;
        const int level_before = state.level;
        const auto signal = policy::curriculum_step(state, ppl, level_source);

        emit({{"event", "rollout"},
              {"step", total_steps},
              {"level", level_before},
              {"ppl", ppl},
              {"delta", delta_before}});

        if (signal.update_policy) {
            // Synthetic GRPO update over the most recent group of rollouts:
            // the policy improved since they were gathered, so ratios > 1.
            const int g = std::min<int>(config.grpo.group_size,
                                        static_cast<int>(buffered_ppls.size()));
            if (g >= 2) {
                policy::RolloutGroup group;
                const double current = synthetic.current_ppl();
                for (int i = static_cast<int>(buffered_ppls.size()) - g;
                     i < static_cast<int>(buffered_ppls.size()); ++i) {
                    policy::TokenBatch batch;
                    batch.logp_old = {-std::log1p(buffered_ppls[i])};
                    batch.logp_new = {-std::log1p(current)};
                    batch.logp_ref = batch.logp_old;
                    batch.action_mask = {1};
                    group.batches.push_back(std::move(batch));
                    group.rewards.push_back(1.0 / buffered_ppls[i]);
                }
                const auto advantages =
                    policy::group_advantages(group.rewards, config.grpo.baseline);
                const auto loss = policy::grpo_loss(group, advantages, config.grpo.clip_eps,
                                                    config.grpo.kl_beta);
                emit({{"event", "policy_update"},
                      {"step", total_steps},
                      {"update", state.update_counter},
                      {"loss", loss ? loss.value().loss : 0.0}});
            }
            buffered_ppls.clear();
        }

        if (signal.advanced) {
            level_summary.push_back(
                {{"level", level_before}, {"steps", level_steps}, {"delta", delta_before}});
            level_steps = 0;
            if (!state.finished())
                emit({{"event", "level_start"},
                      {"level", state.level},
                      {"delta", state.threshold}});
        }
    }

    const std::string status = state.stalled ? "stalled" : "completed";
    json summary = {{"status", status},
                    {"alpha", alpha},
                    {"ppl0", ppl0},
                    {"decay", decay},
                    {"levels", config.curriculum.levels},
                    {"total_steps", total_steps},
                    {"policy_updates", state.update_counter},
                    {"per_level", level_summary}};
    emit({{"event", "done"}, {"summary", summary}});
    out << summary.dump() << "\n";
    return state.stalled ? kExitDomainFailure : kExitOk;
}

int cmd_fmt_check(const std::string& transcript_path, std::ostream& out, std::ostream& err) {
    std::ifstream in(transcript_path);
    if (!in) {
        err << "cannot open transcript " << transcript_path << "\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const proto::FormatVerdict verdict = proto::validate_format_text(buffer.str());
    json output = {{"ok", verdict.ok}, {"violations", verdict.violations}};
    out << output.dump() << "\n";
    return verdict.ok ? kExitOk : kExitDomainFailure;
}

}  // namespace cadgym::cli
