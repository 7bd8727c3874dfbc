#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cadgym/cli/config.hpp"

namespace cadgym::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;
inline constexpr int kExitUsage = 2;

struct RolloutArgs {
    std::string task_path;        // one task file, or
    std::string task_dir;         // every task in a directory (batch)
    std::string policy = "scripted";  // scripted | replay
    std::string corruption = "none";  // none | drop-step | perturb-param | swap-boolean
    double corruption_rate = 1.0;
    std::optional<std::uint64_t> seed;  // overrides config seed
    std::string out_path;               // overrides config trajectory_out
};

struct EvalArgs {
    std::string generated_dir;
    std::string reference_dir;
    std::string report_path;  // overrides config report_out
};

struct TrainSimArgs {
    std::optional<double> ppl0;
    std::optional<double> decay;
    std::optional<double> alpha;
    std::string trace_path;  // optional JSONL trace
};

int cmd_serve(const Config& config, std::istream& in, std::ostream& out,
              const std::string& task_path);
int cmd_rollout(const Config& config, const RolloutArgs& args, std::ostream& out,
                std::ostream& err);
int cmd_eval(const Config& config, const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_train_sim(const Config& config, const TrainSimArgs& args, std::ostream& out,
                  std::ostream& err);
int cmd_fmt_check(const std::string& transcript_path, std::ostream& out, std::ostream& err);

}  // namespace cadgym::cli
