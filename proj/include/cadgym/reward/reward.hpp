#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cadgym/feedback/feedback.hpp"
#include "cadgym/geometry/types.hpp"
#include "cadgym/protocol/tags.hpp"

namespace cadgym::gym {
struct TrajectoryRecord;
}

namespace cadgym::reward {

/// Weights of the aggregate reward: total = alpha*orm + beta*step_mean +
/// gamma*format. Defaults keep the binary format term worth 0.5.
struct RewardWeights {
    double alpha = 1.0;
    double beta = 0.5;
    double gamma = 0.5;

    bool valid() const {
        return alpha >= 0 && beta >= 0 && gamma >= 0 && (alpha + beta + gamma) > 0;
    }
};

struct RewardBreakdown {
    int orm = 0;                    // {0,1}
    std::vector<int> step_rewards;  // {0,1} per tool invocation
    double step_mean = 0.0;         // 0 for an empty trajectory
    int format = 0;                 // {0,1}
    double total = 0.0;

    bool operator==(const RewardBreakdown&) const = default;
};

struct JudgeVerdict {
    double yes_prob = 0.0;
    double no_prob = 0.0;
};

/// Trajectory-level binary judge. Implementations must be deterministic for
/// identical inputs; a learned model can be plugged in behind this.
class TrajectoryJudge {
  public:
    virtual ~TrajectoryJudge() = default;
    virtual JudgeVerdict judge(const std::string& instruction,
                               const gym::TrajectoryRecord& trajectory,
                               const geom::CsgSolid* final_solid,
                               const geom::CsgSolid* ground_truth) const = 0;
};

/// Exact match of the observation label against "success".
int step_reward(const feedback::Observation& obs);

/// 1 iff the transcript structure verdict is clean.
int format_reward(const proto::FormatVerdict& verdict);

/// 1 iff the judge strictly prefers YES; ties score 0.
int orm_reward(const JudgeVerdict& verdict);

RewardBreakdown aggregate_reward(int orm, const std::vector<int>& step_rewards, int format,
                                 const RewardWeights& weights);

/// Geometric stand-in for a learned outcome judge: YES iff the voxel IoU of
/// the final solid against the ground truth reaches the threshold.
class ReferenceJudge : public TrajectoryJudge {
  public:
    explicit ReferenceJudge(double iou_threshold = 0.95, int resolution = 64)
        : threshold_(iou_threshold), resolution_(resolution) {}

    JudgeVerdict judge(const std::string& instruction, const gym::TrajectoryRecord& trajectory,
                       const geom::CsgSolid* final_solid,
                       const geom::CsgSolid* ground_truth) const override;

    double threshold() const { return threshold_; }
    int resolution() const { return resolution_; }

  private:
    double threshold_;
    int resolution_;
};

}  // namespace cadgym::reward
