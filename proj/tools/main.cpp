#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cadgym/cli/commands.hpp"
#include "cadgym/cli/config.hpp"

using namespace cadgym;

int main(int argc, char** argv) {
    CLI::App app{"CAD modeling gym: tool server, rollouts, metrics and training simulation"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags win over file values)");

    auto* serve = app.add_subcommand("serve", "Serve the tool library over stdio JSON-RPC");
    std::string serve_task;
    serve->add_option("--task", serve_task, "Task file providing instruction + ground truth");

    auto* rollout = app.add_subcommand("rollout", "Run scripted episodes over tasks");
    cli::RolloutArgs rollout_args;
    rollout->add_option("--task", rollout_args.task_path, "Single task file");
    rollout->add_option("--task-dir", rollout_args.task_dir, "Directory of task files");
    rollout->add_option("--policy", rollout_args.policy, "scripted | replay");
    rollout->add_option("--corrupt", rollout_args.corruption,
                        "none | drop-step | perturb-param | swap-boolean");
    rollout->add_option("--corruption-rate", rollout_args.corruption_rate,
                        "Probability the corruption applies (default 1)");
    std::uint64_t rollout_seed = 0;
    auto* seed_opt = rollout->add_option("--seed", rollout_seed, "Seed override");
    rollout->add_option("-o,--out", rollout_args.out_path, "Trajectory output file");

    auto* eval = app.add_subcommand("eval", "Score generated programs against references");
    cli::EvalArgs eval_args;
    eval->add_option("--generated", eval_args.generated_dir, "Directory of generated programs")
        ->required();
    eval->add_option("--reference", eval_args.reference_dir, "Directory of reference programs")
        ->required();
    eval->add_option("-o,--report", eval_args.report_path, "Machine-readable report path");

    auto* train_sim =
        app.add_subcommand("train-sim", "Simulate curriculum training with a synthetic policy");
    cli::TrainSimArgs sim_args;
    double sim_ppl0 = 0, sim_decay = 0, sim_alpha = 0;
    auto* ppl0_opt = train_sim->add_option("--ppl0", sim_ppl0, "Initial synthetic perplexity");
    auto* decay_opt = train_sim->add_option("--decay", sim_decay, "Per-rollout decay factor");
    auto* alpha_opt = train_sim->add_option("--alpha", sim_alpha, "Curriculum threshold factor");
    train_sim->add_option("--trace", sim_args.trace_path, "JSONL trace output");

    auto* fmt_check = app.add_subcommand("fmt-check", "Validate a transcript's tag structure");
    std::string transcript_path;
    fmt_check->add_option("transcript", transcript_path, "Transcript text file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    cli::Config config;
    if (!config_path.empty()) {
        auto loaded = cli::load_config(config_path);
        if (!loaded) {
            std::cerr << loaded.message() << "\n";
            return cli::kExitUsage;
        }
        config = loaded.take();
    }
    cli::apply_env_overrides(config);

    if (serve->parsed()) return cli::cmd_serve(config, std::cin, std::cout, serve_task);
    if (rollout->parsed()) {
        if (seed_opt->count() > 0) rollout_args.seed = rollout_seed;
        return cli::cmd_rollout(config, rollout_args, std::cout, std::cerr);
    }
    if (eval->parsed()) return cli::cmd_eval(config, eval_args, std::cout, std::cerr);
    if (train_sim->parsed()) {
        if (ppl0_opt->count() > 0) sim_args.ppl0 = sim_ppl0;
        if (decay_opt->count() > 0) sim_args.decay = sim_decay;
        if (alpha_opt->count() > 0) sim_args.alpha = sim_alpha;
        return cli::cmd_train_sim(config, sim_args, std::cout, std::cerr);
    }
    if (fmt_check->parsed()) return cli::cmd_fmt_check(transcript_path, std::cout, std::cerr);
    return cli::kExitUsage;
}
