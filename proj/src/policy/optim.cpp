#include "cadgym/policy/optim.hpp"

#include <algorithm>
#include <cmath>

namespace cadgym::policy {

namespace {

/// Mean of masked logp_new; the shared core of perplexity and bc_loss so the
/// ln(perplexity) == bc_loss identity holds bit for bit.
Result<double, OptimError> masked_mean_logp(const TokenBatch& batch) {
    using R = Result<double, OptimError>;
    auto valid = validate_batch(batch);
    if (!valid) return R::err(valid.error(), valid.message());
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!batch.action_mask[i]) continue;
        acc += batch.logp_new[i];
        ++count;
    }
    return R::ok(acc / static_cast<double>(count));
}

}  // namespace

std::size_t TokenBatch::masked_count() const {
    return static_cast<std::size_t>(
        std::count(action_mask.begin(), action_mask.end(), std::uint8_t{1}));
}

Result<Unit, OptimError> validate_batch(const TokenBatch& batch) {
    using R = Result<Unit, OptimError>;
    const std::size_t n = batch.logp_new.size();
    if (batch.logp_old.size() != n || batch.logp_ref.size() != n ||
        batch.action_mask.size() != n)
        return R::err(OptimError::size_mismatch, "token arrays must have equal lengths");
    for (std::size_t i = 0; i < n; ++i) {
        for (const double lp : {batch.logp_new[i], batch.logp_old[i], batch.logp_ref[i]}) {
            if (!std::isfinite(lp) || lp > 0.0)
                return R::err(OptimError::invalid_logprob,
                              "log-probabilities must be finite and <= 0");
        }
    }
    if (batch.masked_count() == 0)
        return R::err(OptimError::empty_mask, "action mask selects no tokens");
    return R::ok(Unit{});
}

Result<double, OptimError> perplexity(const TokenBatch& batch) {
    using R = Result<double, OptimError>;
    auto mean = masked_mean_logp(batch);
    if (!mean) return mean;
    return R::ok(std::exp(-mean.value()));
}

Result<double, OptimError> bc_loss(const TokenBatch& batch) {
    using R = Result<double, OptimError>;
    auto mean = masked_mean_logp(batch);
    if (!mean) return mean;
    return R::ok(-mean.value());
}

std::vector<double> group_advantages(const std::vector<double>& rewards,
                                     BaselineMode baseline) {
    const std::size_t g = rewards.size();
    std::vector<double> advantages(g, 0.0);
    if (g < 2) return advantages;

    double mean = 0.0;
    for (const double r : rewards) mean += r;
    mean /= static_cast<double>(g);

    double var = 0.0;
    for (const double r : rewards) var += (r - mean) * (r - mean);
    var /= static_cast<double>(g);  // population variance
    const double std_dev = std::sqrt(var);
    if (std_dev <= 0.0) return advantages;

    const double base = baseline == BaselineMode::mean
                            ? mean
                            : *std::max_element(rewards.begin(), rewards.end());
    for (std::size_t i = 0; i < g; ++i) advantages[i] = (rewards[i] - base) / std_dev;
    return advantages;
}

double kl_per_token(double logp_new, double logp_ref) {
    const double r = std::exp(logp_ref - logp_new);
    return r - std::log(r) - 1.0;
}

Result<GrpoResult, OptimError> grpo_loss(const RolloutGroup& group,
                                         const std::vector<double>& advantages,
                                         double clip_eps, double kl_beta) {
    using R = Result<GrpoResult, OptimError>;
    const std::size_t g = group.size();
    if (g < 2 || group.rewards.size() != g || advantages.size() != g)
        return R::err(OptimError::bad_group,
                      "group needs G >= 2 trajectories with aligned rewards and advantages");

    GrpoResult out;
    out.grad_logp_new.resize(g);
    double kl_acc = 0.0;
    std::size_t clip_count = 0, token_count = 0;

    for (std::size_t i = 0; i < g; ++i) {
        const TokenBatch& batch = group.batches[i];
        auto valid = validate_batch(batch);
        if (!valid) return R::err(valid.error(), valid.message());

        const double advantage = advantages[i];
        const double t_i = static_cast<double>(batch.masked_count());
        const double token_weight = 1.0 / (static_cast<double>(g) * t_i);
        out.grad_logp_new[i].assign(batch.size(), 0.0);

        for (std::size_t k = 0; k < batch.size(); ++k) {
            if (!batch.action_mask[k]) continue;
            const double ratio = std::exp(batch.logp_new[k] - batch.logp_old[k]);
            if (!std::isfinite(ratio))
                return R::err(OptimError::non_finite_ratio,
                              "non-finite importance ratio at trajectory " + std::to_string(i) +
                                  ", token " + std::to_string(k));
            const double clipped_ratio = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps);
            const double unclipped = ratio * advantage;
            const double clipped = clipped_ratio * advantage;

            double term, dterm;  // objective term and its d/dlogp_new
            if (unclipped <= clipped) {
                term = unclipped;
                dterm = ratio * advantage;
            } else {
                term = clipped;
                dterm = (ratio > 1.0 - clip_eps && ratio < 1.0 + clip_eps)
                            ? ratio * advantage
                            : 0.0;
                ++clip_count;
            }

            const double ref_ratio = std::exp(batch.logp_ref[k] - batch.logp_new[k]);
            const double kl = ref_ratio - std::log(ref_ratio) - 1.0;
            kl_acc += kl;
            ++token_count;

            out.objective += token_weight * (term - kl_beta * kl);
            // d kl / d logp_new = 1 - ref_ratio
            const double dobj = dterm - kl_beta * (1.0 - ref_ratio);
            out.grad_logp_new[i][k] = -token_weight * dobj;
        }
    }

    out.loss = -out.objective;
    out.mean_kl = token_count > 0 ? kl_acc / static_cast<double>(token_count) : 0.0;
    out.clip_fraction =
        token_count > 0 ? static_cast<double>(clip_count) / static_cast<double>(token_count)
                        : 0.0;
    return R::ok(std::move(out));
}

}  // namespace cadgym::policy
