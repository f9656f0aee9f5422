#ifndef DIFFDEC_EVAL_HPP_
#define DIFFDEC_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "diffdec/expr.hpp"

namespace diffdec {

enum class DomainFault { log_argument, tan_pole, negative_power_base, overflow };

const char* domain_fault_name(DomainFault f);

class EvalDomainError : public std::runtime_error {
public:
    EvalDomainError(DomainFault fault, ExprPtr subexpr);
    DomainFault fault() const { return fault_; }
    const ExprPtr& subexpr() const { return subexpr_; }

private:
    DomainFault fault_;
    ExprPtr subexpr_;
};

// Margin used by the domain guards: log needs arg > eps, tan needs
// |cos(arg)| > eps, negative powers need |base| > eps.
inline constexpr double kDomainEpsilon = 1e-9;

// Standard real evaluation with domain guards. Throws EvalDomainError when
// the point must be skipped (including non-finite intermediates).
double eval_at(const ExprPtr& e, double x0);

// Non-throwing variant for sampling loops.
struct EvalResult {
    bool ok = false;
    double value = 0.0;
    DomainFault fault = DomainFault::overflow;
};
EvalResult try_eval(const ExprPtr& e, double x0) noexcept;

// --- probabilistic equivalence -------------------------------------------

// Replaces an external CAS call: canonical structural equality first, then
// randomized numeric sampling.
struct EquivalenceOptions {
    int candidate_points = 32;      // points drawn from [lo, hi]
    int min_admissible = 8;         // required for an "equivalent" verdict
    double rel_tolerance = 1e-9;
    double lo = 0.15;
    double hi = 2.5;
    std::uint64_t seed = 0x5eedULL;
    double magnitude_cap = 1e12;    // larger values make the point inadmissible
};

enum class Equivalence { equivalent, distinct, insufficient_domain };

struct EquivalenceVerdict {
    Equivalence outcome = Equivalence::insufficient_domain;
    int points_tested = 0;          // admissible points actually compared
    double max_relative_error = 0.0;
    bool structural = false;        // decided by structural equality alone
    std::optional<double> witness;  // a point separating the two (distinct)
};

EquivalenceVerdict equivalent(const ExprPtr& a, const ExprPtr& b,
                              const EquivalenceOptions& opts = {});

}  // namespace diffdec

#endif  // DIFFDEC_EVAL_HPP_
