#include "cadgym/policy/policy.hpp"

#include <cmath>

namespace cadgym::policy {

std::vector<double> TabularPolicy::logprobs(const std::vector<int>& tokens) const {
    std::vector<double> out;
    out.reserve(tokens.size());
    for (const int token : tokens) {
        auto it = table_.find(token);
        out.push_back(it != table_.end() ? it->second : default_logp_);
    }
    return out;
}

std::string TabularPolicy::sample(const std::string& /*state_text*/,
                                  std::uint64_t /*seed*/) const {
    return canned_action_;
}

double SyntheticDecayPolicy::current_ppl() const {
    return ppl0_ * std::pow(decay_, static_cast<double>(step_));
}

double SyntheticDecayPolicy::rollout_ppl() {
    const double ppl = current_ppl();
    ++step_;
    return ppl;
}

std::vector<double> SyntheticDecayPolicy::validation_ppls(int count) const {
    return std::vector<double>(static_cast<std::size_t>(count), current_ppl());
}

std::vector<double> SyntheticDecayPolicy::logprobs(const std::vector<int>& tokens) const {
    // Per-token log-prob consistent with the current trajectory perplexity.
    return std::vector<double>(tokens.size(), -std::log(current_ppl()));
}

std::string SyntheticDecayPolicy::sample(const std::string& /*state_text*/,
                                         std::uint64_t /*seed*/) const {
    return "";
}

}  // namespace cadgym::policy
