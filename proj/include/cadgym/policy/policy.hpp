#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cadgym::policy {

/// Minimal policy abstraction the optimization math runs against. Token ids
/// are opaque ints; sample() must be reproducible for a given seed.
class PolicyInterface {
  public:
    virtual ~PolicyInterface() = default;
    virtual std::vector<double> logprobs(const std::vector<int>& tokens) const = 0;
    virtual std::string sample(const std::string& state_text, std::uint64_t seed) const = 0;
};

/// Fixed per-token log-probability table; unlisted tokens get the default.
/// The scripted stand-in for a real model in tests.
class TabularPolicy : public PolicyInterface {
  public:
    TabularPolicy(std::map<int, double> token_logps, double default_logp,
                  std::string canned_action = "")
        : table_(std::move(token_logps)),
          default_logp_(default_logp),
          canned_action_(std::move(canned_action)) {}

    std::vector<double> logprobs(const std::vector<int>& tokens) const override;
    std::string sample(const std::string& state_text, std::uint64_t seed) const override;

  private:
    std::map<int, double> table_;
    double default_logp_;
    std::string canned_action_;
};

/// Policy whose trajectory perplexity decays geometrically with every
/// rollout: ppl(t) = ppl0 * decay^t. Drives curriculum simulations, where
/// the closed-form step count per level is known.
class SyntheticDecayPolicy : public PolicyInterface {
  public:
    SyntheticDecayPolicy(double ppl0, double decay) : ppl0_(ppl0), decay_(decay) {}

    double current_ppl() const;
    /// Perplexity of the next rollout; advances the internal step counter.
    double rollout_ppl();
    /// Held-in validation under the current policy: every trajectory scores
    /// the current perplexity.
    std::vector<double> validation_ppls(int count) const;

    long steps() const { return step_; }

    std::vector<double> logprobs(const std::vector<int>& tokens) const override;
    std::string sample(const std::string& state_text, std::uint64_t seed) const override;

  private:
    double ppl0_;
    double decay_;
    long step_ = 0;
};

}  // namespace cadgym::policy
