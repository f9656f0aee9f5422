#include "diffdec/calculus.hpp"

#include <vector>

#include "diffdec/eval.hpp"

namespace diffdec {

namespace {

// Derivative of a single basis application f(u), without the inner factor.
ExprPtr outer_derivative(Func f, const ExprPtr& u) {
    switch (f) {
        case Func::sin:
            return apply(Func::cos, u);
        case Func::cos:
            return product({constant(-1), apply(Func::sin, u)});
        case Func::tan:
            return sum({constant(1), power(apply(Func::tan, u), 2)});
        case Func::exp:
            return apply(Func::exp, u);
        case Func::log:
            return power(u, -1);
    }
    return constant(0);
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e) {
    switch (e->kind()) {
        case Kind::variable:
            return constant(1);
        case Kind::constant:
            return constant(0);
        case Kind::apply:
            return product({outer_derivative(e->func(), e->arg()), differentiate(e->arg())});
        case Kind::power: {
            // n * b^(n-1) * b'
            const long long n = e->exponent();
            return product({constant(n), power(e->base(), n - 1), differentiate(e->base())});
        }
        case Kind::sum: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->operands().size());
            for (const auto& op : e->operands()) parts.push_back(differentiate(op));
            return sum(std::move(parts));
        }
        case Kind::product: {
            // generalized k-ary product rule on the flattened operand list
            const auto& ops = e->operands();
            std::vector<ExprPtr> termv;
            termv.reserve(ops.size());
            for (std::size_t i = 0; i < ops.size(); ++i) {
                std::vector<ExprPtr> factorv;
                factorv.reserve(ops.size());
                factorv.push_back(differentiate(ops[i]));
                for (std::size_t j = 0; j < ops.size(); ++j)
                    if (j != i) factorv.push_back(ops[j]);
                termv.push_back(product(std::move(factorv)));
            }
            return sum(std::move(termv));
        }
    }
    return constant(0);
}

double finite_difference(const ExprPtr& e, double x0, double h) {
    return (eval_at(e, x0 + h) - eval_at(e, x0 - h)) / (2.0 * h);
}

namespace {

ExprPtr simplify_pass(const ExprPtr& e) {
    switch (e->kind()) {
        case Kind::variable:
        case Kind::constant:
            return e;
        case Kind::apply:
            return apply(e->func(), simplify_pass(e->arg()));
        case Kind::power: {
            ExprPtr base = simplify_pass(e->base());
            if (base->is(Kind::power))
                return power(base->base(), base->exponent() * e->exponent());
            return power(base, e->exponent());
        }
        case Kind::sum: {
            std::vector<ExprPtr> ops;
            ops.reserve(e->operands().size());
            for (const auto& op : e->operands()) ops.push_back(simplify_pass(op));
            return sum(std::move(ops));
        }
        case Kind::product: {
            std::vector<ExprPtr> ops;
            ops.reserve(e->operands().size());
            for (const auto& op : e->operands()) ops.push_back(simplify_pass(op));
            // merge operand pairs that are powers of the same base
            for (std::size_t i = 0; i < ops.size(); ++i) {
                if (!ops[i]->is(Kind::power)) continue;
                for (std::size_t j = i + 1; j < ops.size(); ++j) {
                    if (!ops[j]->is(Kind::power) || !equal(ops[i]->base(), ops[j]->base()))
                        continue;
                    long long n = ops[i]->exponent() + ops[j]->exponent();
                    ops[i] = power(ops[i]->base(), n);
                    ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
                    --j;
                    if (!ops[i]->is(Kind::power)) break;  // merged away (n of 0 or 1)
                }
            }
            if (ops.size() == 1) return ops[0];
            return product(std::move(ops));
        }
    }
    return e;
}

}  // namespace

ExprPtr simplify(const ExprPtr& e) {
    ExprPtr cur = canonicalize(e);
    for (int i = 0; i < 8; ++i) {
        ExprPtr next = simplify_pass(cur);
        if (equal(next, cur)) break;
        cur = next;
    }
    return cur;
}

}  // namespace diffdec
