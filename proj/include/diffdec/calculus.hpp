#ifndef DIFFDEC_CALCULUS_HPP_
#define DIFFDEC_CALCULUS_HPP_

#include "diffdec/expr.hpp"

namespace diffdec {

// The solution operator: d/dx, returned in canonical form.
//
// tan' is expressed as (1 + tan(u)^2) * u' and log' as u^-1 * u' so the
// node set stays division-free; solutions may therefore carry negative
// exponents even though problem expressions never do. Flattened products
// use the generalized k-ary product rule directly.
ExprPtr differentiate(const ExprPtr& e);

// Central difference (e(x0+h) - e(x0-h)) / (2h). Independent numeric oracle
// for differentiate; propagates EvalDomainError from eval_at.
double finite_difference(const ExprPtr& e, double x0, double h = 1e-5);

// Canonicalization plus a small, bounded set of local rewrites:
// constant folding, (b^m)^n -> b^(m*n), and merging product operands that
// are powers of the same base. No trig identities, no factoring.
ExprPtr simplify(const ExprPtr& e);

}  // namespace diffdec

#endif  // DIFFDEC_CALCULUS_HPP_
