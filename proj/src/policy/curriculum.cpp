#include "cadgym/policy/curriculum.hpp"

#include <numeric>

namespace cadgym::policy {

Result<double, OptimError> compute_threshold(const std::vector<double>& validation_ppls,
                                             double alpha) {
    using R = Result<double, OptimError>;
    if (validation_ppls.empty())
        return R::err(OptimError::bad_group, "validation perplexity list is empty");
    const double mean = std::accumulate(validation_ppls.begin(), validation_ppls.end(), 0.0) /
                        static_cast<double>(validation_ppls.size());
    return R::ok(alpha * mean);
}

CurriculumSignal curriculum_step(CurriculumState& state, double new_ppl,
                                 const LevelPplSource& level_ppls) {
    CurriculumSignal signal;
    if (state.finished() || state.stalled) {
        signal.stalled = state.stalled;
        return signal;
    }

    state.recent_ppls.push_back(new_ppl);
    while (static_cast<int>(state.recent_ppls.size()) > state.window)
        state.recent_ppls.pop_front();
    ++state.iters_at_level;

    ++state.buffer_size;
    if (state.buffer_size >= state.n_update) {
        state.buffer_size = 0;
        ++state.update_counter;
        signal.update_policy = true;
    }

    const double window_mean =
        std::accumulate(state.recent_ppls.begin(), state.recent_ppls.end(), 0.0) /
        static_cast<double>(state.recent_ppls.size());

    if (window_mean < state.threshold) {
        ++state.level;
        state.recent_ppls.clear();
        state.iters_at_level = 0;
        signal.advanced = true;
        if (!state.finished()) {
            auto threshold = compute_threshold(level_ppls(state.level), state.alpha);
            if (threshold) state.threshold = threshold.value();
        }
    } else if (state.iters_at_level >= state.max_iters_per_level) {
        state.stalled = true;
        signal.stalled = true;
    }
    return signal;
}

}  // namespace cadgym::policy
