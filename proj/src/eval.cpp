#include "diffdec/eval.hpp"

#include <cmath>

#include "diffdec/rng.hpp"

namespace diffdec {

const char* domain_fault_name(DomainFault f) {
    switch (f) {
        case DomainFault::log_argument: return "log-argument";
        case DomainFault::tan_pole: return "tan-pole";
        case DomainFault::negative_power_base: return "negative-power-base";
        case DomainFault::overflow: return "overflow";
    }
    return "?";
}

EvalDomainError::EvalDomainError(DomainFault fault, ExprPtr subexpr)
    : std::runtime_error(std::string("domain error: ") + domain_fault_name(fault) + " in " +
                         render(subexpr)),
      fault_(fault),
      subexpr_(std::move(subexpr)) {}

namespace {

struct Fault {
    DomainFault kind;
    const Expr* where;
};

// Evaluation core; reports the offending subexpression through `fault`
// instead of throwing so sampling loops stay cheap.
bool eval_core(const ExprPtr& e, double x, double& out, Fault& fault) {
    switch (e->kind()) {
        case Kind::variable:
            out = x;
            return true;
        case Kind::constant:
            out = rat_to_double(e->value());
            return true;
        case Kind::apply: {
            double a;
            if (!eval_core(e->arg(), x, a, fault)) return false;
            switch (e->func()) {
                case Func::sin: out = std::sin(a); break;
                case Func::cos: out = std::cos(a); break;
                case Func::tan:
                    if (std::fabs(std::cos(a)) <= kDomainEpsilon) {
                        fault = {DomainFault::tan_pole, e.get()};
                        return false;
                    }
                    out = std::tan(a);
                    break;
                case Func::exp: out = std::exp(a); break;
                case Func::log:
                    if (a <= kDomainEpsilon) {
                        fault = {DomainFault::log_argument, e.get()};
                        return false;
                    }
                    out = std::log(a);
                    break;
            }
            break;
        }
        case Kind::power: {
            double b;
            if (!eval_core(e->base(), x, b, fault)) return false;
            if (e->exponent() < 0 && std::fabs(b) <= kDomainEpsilon) {
                fault = {DomainFault::negative_power_base, e.get()};
                return false;
            }
            out = std::pow(b, static_cast<double>(e->exponent()));
            break;
        }
        case Kind::sum: {
            double acc = 0;
            for (const auto& op : e->operands()) {
                double v;
                if (!eval_core(op, x, v, fault)) return false;
                acc += v;
            }
            out = acc;
            break;
        }
        case Kind::product: {
            double acc = 1;
            for (const auto& op : e->operands()) {
                double v;
                if (!eval_core(op, x, v, fault)) return false;
                acc *= v;
            }
            out = acc;
            break;
        }
    }
    if (!std::isfinite(out)) {
        fault = {DomainFault::overflow, e.get()};
        return false;
    }
    return true;
}

// Rebuilds a shared_ptr for the offending node so the error can outlive
// the evaluation. The node is findable from the root by identity.
ExprPtr find_node(const ExprPtr& root, const Expr* target) {
    if (root.get() == target) return root;
    for (const auto& op : root->operands()) {
        if (ExprPtr hit = find_node(op, target)) return hit;
    }
    return nullptr;
}

}  // namespace

double eval_at(const ExprPtr& e, double x0) {
    double out;
    Fault fault{DomainFault::overflow, nullptr};
    if (!eval_core(e, x0, out, fault)) {
        ExprPtr where = fault.where ? find_node(e, fault.where) : e;
        throw EvalDomainError(fault.kind, where ? where : e);
    }
    return out;
}

EvalResult try_eval(const ExprPtr& e, double x0) noexcept {
    EvalResult r;
    Fault fault{DomainFault::overflow, nullptr};
    double out;
    if (eval_core(e, x0, out, fault)) {
        r.ok = true;
        r.value = out;
    } else {
        r.fault = fault.kind;
    }
    return r;
}

EquivalenceVerdict equivalent(const ExprPtr& a, const ExprPtr& b, const EquivalenceOptions& opts) {
    EquivalenceVerdict v;
    if (equal(a, b)) {
        v.outcome = Equivalence::equivalent;
        v.structural = true;
        return v;
    }
    Rng rng(opts.seed);
    int admissible = 0;
    double max_rel = 0.0;
    for (int i = 0; i < opts.candidate_points; ++i) {
        double x = rng.uniform_real(opts.lo, opts.hi);
        EvalResult ra = try_eval(a, x);
        EvalResult rb = try_eval(b, x);
        if (!ra.ok || !rb.ok) continue;
        if (std::fabs(ra.value) > opts.magnitude_cap || std::fabs(rb.value) > opts.magnitude_cap)
            continue;
        ++admissible;
        double scale = 1.0 + std::max(std::fabs(ra.value), std::fabs(rb.value));
        double rel = std::fabs(ra.value - rb.value) / scale;
        max_rel = std::max(max_rel, rel);
        if (rel > opts.rel_tolerance) {
            v.outcome = Equivalence::distinct;
            v.points_tested = admissible;
            v.max_relative_error = max_rel;
            v.witness = x;
            return v;
        }
    }
    v.points_tested = admissible;
    v.max_relative_error = max_rel;
    v.outcome = admissible >= opts.min_admissible ? Equivalence::equivalent
                                                  : Equivalence::insufficient_domain;
    return v;
}

}  // namespace diffdec
