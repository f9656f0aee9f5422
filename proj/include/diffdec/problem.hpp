#ifndef DIFFDEC_PROBLEM_HPP_
#define DIFFDEC_PROBLEM_HPP_

#include <string>

#include "diffdec/calculus.hpp"
#include "diffdec/expr.hpp"

namespace diffdec {

// A differentiation task d/dx[expr] with cached difficulty and reference
// solution. level = max(1, depth), solution = differentiate(expr).
struct Problem {
    std::string id;
    ExprPtr expr;
    int depth = 0;
    int level = 1;
    ExprPtr solution;
};

inline Problem make_problem(std::string id, ExprPtr expr) {
    Problem p;
    p.id = std::move(id);
    p.expr = canonicalize(expr);
    p.depth = diffdec::depth(p.expr);
    p.level = p.depth < 1 ? 1 : p.depth;
    p.solution = differentiate(p.expr);
    return p;
}

}  // namespace diffdec

#endif  // DIFFDEC_PROBLEM_HPP_
