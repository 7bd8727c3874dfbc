#include "cadgym/reward/reward.hpp"

#include "cadgym/metrics/metrics.hpp"

namespace cadgym::reward {

int step_reward(const feedback::Observation& obs) {
    return obs.label == feedback::kLabelSuccess ? 1 : 0;
}

int format_reward(const proto::FormatVerdict& verdict) { return verdict.ok ? 1 : 0; }

int orm_reward(const JudgeVerdict& verdict) {
    return verdict.yes_prob > verdict.no_prob ? 1 : 0;
}

RewardBreakdown aggregate_reward(int orm, const std::vector<int>& step_rewards, int format,
                                 const RewardWeights& weights) {
    RewardBreakdown breakdown;
    breakdown.orm = orm;
    breakdown.step_rewards = step_rewards;
    breakdown.format = format;
    if (!step_rewards.empty()) {
        double acc = 0.0;
        for (const int r : step_rewards) acc += r;
        breakdown.step_mean = acc / static_cast<double>(step_rewards.size());
    }
    breakdown.total = weights.alpha * breakdown.orm + weights.beta * breakdown.step_mean +
                      weights.gamma * breakdown.format;
    return breakdown;
}

JudgeVerdict ReferenceJudge::judge(const std::string& /*instruction*/,
                                   const gym::TrajectoryRecord& /*trajectory*/,
                                   const geom::CsgSolid* final_solid,
                                   const geom::CsgSolid* ground_truth) const {
    if (final_solid == nullptr || ground_truth == nullptr) return {0.0, 1.0};
    const double overlap = metrics::iou(*final_solid, *ground_truth, resolution_);
    if (overlap >= threshold_) return {1.0, 0.0};
    return {0.0, 1.0};
}

}  // namespace cadgym::reward
