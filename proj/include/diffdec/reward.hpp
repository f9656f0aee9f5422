#ifndef DIFFDEC_REWARD_HPP_
#define DIFFDEC_REWARD_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffdec/decompose.hpp"
#include "diffdec/problem.hpp"

namespace diffdec {

// Rule-based grading components. base_total is r_acc + r_fmt (max 1.1);
// extended_total adds the decomposition-aware bonuses.
struct RewardBreakdown {
    double r_acc = 0.0;       // 1.0 iff the final answer is equivalent to the solution
    double r_fmt = 0.0;       // 0.1 iff the response contains \boxed{...}
    double rule_bonus = 0.0;  // 0.2 iff the correct calculus rule is named
    double child_bonus = 0.0; // 0.3 iff some step equals a child solution
    double step_bonus = 0.0;  // 0.1 per distinct tree node solved in a step

    double base_total() const { return r_acc + r_fmt; }
    double extended_total() const {
        return ((base_total() + rule_bonus) + child_bonus) + step_bonus;
    }
};

struct GradedResponse {
    std::string problem_id;
    std::optional<ExprPtr> final_answer;   // parsed final expression, if any
    RewardBreakdown breakdown;
    std::vector<ExprPtr> steps;            // parsed non-final boxed expressions
    bool equivalence_inconclusive = false; // graded 0 but flagged for visibility
    std::string parse_diagnostic;          // why the final answer failed to parse
};

// All maximal \boxed{...} payloads with balanced braces, in order; an
// unbalanced occurrence yields no match. The last payload is the final
// answer by convention.
std::vector<std::string> extract_boxed(const std::string& text);

// Accuracy + format. Unboxed responses are additionally scanned for a
// trailing parseable expression (graded for r_acc only, r_fmt stays 0).
GradedResponse grade_base(const Problem& p, const std::string& response,
                          const EquivalenceOptions& opts = {});

// Keyword table for rule identification; the paper gives no detection
// mechanism, so this is a case-insensitive "<keyword> rule" match.
using RuleKeywords = std::map<Rule, std::vector<std::string>>;
RuleKeywords default_rule_keywords();

// Base grading plus rule/child/step bonuses computed against the problem's
// verified decomposition tree.
GradedResponse grade_extended(const Problem& p, const std::string& response,
                              const DecompositionTree& tree,
                              const EquivalenceOptions& opts = {},
                              const RuleKeywords& keywords = default_rule_keywords());

// --- evaluation metrics ----------------------------------------------------

struct LevelAccuracy {
    std::size_t count = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
};

struct AccuracyReport {
    std::map<int, LevelAccuracy> per_level;
    double overall = 0.0;  // level-size-weighted mean
    // relative improvement vs a baseline run, percent (only with baseline)
    std::map<int, double> delta_per_level;
    std::optional<double> delta_overall;
};

// Acc_k per difficulty level plus overall; `baseline` (same problems,
// another run) adds Delta_k = (trained - base) / base * 100%.
// Throws std::invalid_argument on unknown problem ids.
AccuracyReport accuracy_by_level(const std::vector<GradedResponse>& graded,
                                 const std::vector<Problem>& problems,
                                 const std::vector<GradedResponse>* baseline = nullptr);

}  // namespace diffdec

#endif  // DIFFDEC_REWARD_HPP_
