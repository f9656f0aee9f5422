#ifndef DIFFDEC_RL_HPP_
#define DIFFDEC_RL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "diffdec/reward.hpp"

namespace diffdec {

// One sampled response: scalar reward plus sequence-level (summed) log
// probabilities under the current and reference policies.
struct GroupSample {
    double reward = 0.0;
    double logp_current = 0.0;
    double logp_reference = 0.0;
    std::string problem_id;
};

struct RLConfig {
    std::size_t group_size = 4;   // G
    double clip = 0.2;            // epsilon_clip
    double kl_coefficient = 1e-3; // beta
    double norm_epsilon = 1e-8;   // epsilon in the advantage denominator

    void validate() const;  // throws std::invalid_argument
};

// Group-normalized advantages (r_i - mean) / (population std + eps).
// Requires at least two rewards.
std::vector<double> group_advantages(const std::vector<double>& rewards,
                                     double norm_epsilon = 1e-8);

// min(ratio * A, clip(ratio, 1-eps, 1+eps) * A). Requires ratio > 0.
double clipped_surrogate(double ratio, double advantage, double clip);

// Per-sample KL estimator exp(d) - d - 1 with d = logp_ref - logp_cur;
// non-negative, zero iff the log-probs match. d is clamped to +/-30.
struct KlPenalty {
    double value = 0.0;
    bool clamped = false;
};
KlPenalty kl_penalty_checked(const GroupSample& sample);
double kl_penalty(const GroupSample& sample);

// Mean over groups of the clipped surrogate (advantages normalized within
// each group) minus beta times the mean KL penalty.
double grpo_objective(const std::vector<std::vector<GroupSample>>& groups,
                      const RLConfig& cfg);

// --- preference pairs (DPO-style) ----------------------------------------

struct PreferencePair {
    std::string problem_id;
    std::size_t chosen = 0;    // indices into the graded input list
    std::size_t rejected = 0;
};

// Cross product of correct x incorrect responses within each problem,
// capped per problem, in deterministic first-seen order.
std::vector<PreferencePair> build_preference_pairs(
    const std::vector<GradedResponse>& graded, std::size_t max_pairs_per_problem = 4);

// --- JSONL rows {"problem_id","reward","logp","logp_ref"} ---------------

std::vector<GroupSample> import_samples_jsonl(const std::string& path);
void export_samples_jsonl(const std::vector<GroupSample>& samples, const std::string& path);

// Groups samples by problem_id (first-seen order). Every group must have
// exactly cfg.group_size members.
std::vector<std::vector<GroupSample>> group_samples(const std::vector<GroupSample>& samples,
                                                    const RLConfig& cfg);

}  // namespace diffdec

#endif  // DIFFDEC_RL_HPP_
