#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cadgym/core/result.hpp"

namespace cadgym::policy {

enum class OptimError {
    empty_mask,
    size_mismatch,
    invalid_logprob,
    non_finite_ratio,
    bad_group,
};

/// Aligned per-token log-probabilities of one trajectory under the current,
/// behavior and reference policies. The mask selects agent-generated tokens;
/// environment-injected tokens stay out of every objective.
struct TokenBatch {
    std::vector<double> logp_new;
    std::vector<double> logp_old;
    std::vector<double> logp_ref;
    std::vector<std::uint8_t> action_mask;

    std::size_t size() const { return logp_new.size(); }
    std::size_t masked_count() const;
};

/// Validates lengths, log-prob sign and a non-empty mask.
Result<Unit, OptimError> validate_batch(const TokenBatch& batch);

/// Rollout group for one instruction: G trajectories with scalar rewards.
struct RolloutGroup {
    std::string instruction_id;
    std::vector<TokenBatch> batches;
    std::vector<double> rewards;

    std::size_t size() const { return batches.size(); }
};

enum class BaselineMode { mean, max };

/// exp(-(1/T) * sum of masked logp_new); >= 1 for log-probs <= 0.
Result<double, OptimError> perplexity(const TokenBatch& batch);

/// Negative mean masked log-likelihood; equals ln(perplexity) exactly.
Result<double, OptimError> bc_loss(const TokenBatch& batch);

/// (R_i - baseline) / population std. Degenerate groups (zero variance)
/// yield all-zero advantages.
std::vector<double> group_advantages(const std::vector<double>& rewards, BaselineMode baseline);

/// Non-negative per-token KL estimator k(r) = r - log r - 1 with
/// r = exp(logp_ref - logp_new); zero iff the two agree.
double kl_per_token(double logp_new, double logp_ref);

struct GrpoResult {
    double loss = 0.0;       // negated objective, for minimization
    double objective = 0.0;  // clipped surrogate minus KL penalty
    std::vector<std::vector<double>> grad_logp_new;  // d loss / d logp_new
    double mean_kl = 0.0;        // over masked tokens
    double clip_fraction = 0.0;  // masked tokens where the clipped branch is active
};

/// Clipped group-relative surrogate with per-token KL penalty:
/// mean over trajectories of the masked-token mean of
/// min(ratio*A, clip(ratio, 1-eps, 1+eps)*A) - kl_beta * k(ratio_ref).
Result<GrpoResult, OptimError> grpo_loss(const RolloutGroup& group,
                                         const std::vector<double>& advantages,
                                         double clip_eps, double kl_beta);

}  // namespace cadgym::policy
