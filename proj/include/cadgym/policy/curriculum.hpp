#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "cadgym/core/result.hpp"
#include "cadgym/policy/optim.hpp"

namespace cadgym::policy {

/// Part-count curriculum state: one level per part count, advanced when the
/// recent-perplexity window mean drops under the level threshold.
struct CurriculumState {
    int level = 1;
    int max_level = 5;
    double threshold = 0.0;  // delta for the current level
    double alpha = 0.7;      // threshold = alpha * level validation mean
    int window = 16;
    std::deque<double> recent_ppls;

    int n_update = 32;
    long buffer_size = 0;     // trajectories gathered since the last update
    long update_counter = 0;  // policy updates signalled so far

    long iters_at_level = 0;
    long max_iters_per_level = 100000;  // stall safeguard; not paper behavior
    bool stalled = false;

    bool finished() const { return level > max_level; }
};

struct CurriculumSignal {
    bool advanced = false;       // level moved up this step
    bool update_policy = false;  // buffer reached n_update
    bool stalled = false;
};

/// delta = alpha * mean(validation perplexities).
Result<double, OptimError> compute_threshold(const std::vector<double>& validation_ppls,
                                             double alpha);

/// Supplies the held-in validation perplexities of a level under the current
/// policy; consulted when the curriculum advances.
using LevelPplSource = std::function<std::vector<double>(int level)>;

/// Records one rollout perplexity, signals policy updates every n_update
/// trajectories, and advances the level (recomputing the threshold from the
/// next level's validation set) once the window mean drops below threshold.
CurriculumSignal curriculum_step(CurriculumState& state, double new_ppl,
                                 const LevelPplSource& level_ppls);

}  // namespace cadgym::policy
