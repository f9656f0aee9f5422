#include "diffdec/expr.hpp"

#include <algorithm>
#include <cassert>

namespace diffdec {

const char* func_name(Func f) {
    switch (f) {
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::tan: return "tan";
        case Func::exp: return "exp";
        case Func::log: return "log";
    }
    return "?";
}

// --- raw constructors ----------------------------------------------------

ExprPtr Expr::make_variable() {
    static ExprPtr x(new Expr(Kind::variable, Func::sin, Rational(0), 0, {}));
    return x;
}

ExprPtr Expr::make_constant(Rational value) {
    return ExprPtr(new Expr(Kind::constant, Func::sin, std::move(value), 0, {}));
}

ExprPtr Expr::make_apply(Func f, ExprPtr arg) {
    assert(arg);
    return ExprPtr(new Expr(Kind::apply, f, Rational(0), 0, {std::move(arg)}));
}

ExprPtr Expr::make_power(ExprPtr base, long long exponent) {
    assert(base);
    return ExprPtr(new Expr(Kind::power, Func::sin, Rational(0), exponent, {std::move(base)}));
}

ExprPtr Expr::make_sum(std::vector<ExprPtr> operands) {
    assert(operands.size() >= 2);
    return ExprPtr(new Expr(Kind::sum, Func::sin, Rational(0), 0, std::move(operands)));
}

ExprPtr Expr::make_product(std::vector<ExprPtr> operands) {
    assert(operands.size() >= 2);
    return ExprPtr(new Expr(Kind::product, Func::sin, Rational(0), 0, std::move(operands)));
}

// --- structural queries -------------------------------------------------

int depth(const ExprPtr& e) {
    switch (e->kind()) {
        case Kind::variable:
        case Kind::constant:
            return 0;
        case Kind::apply:
            return 1 + depth(e->arg());
        case Kind::power:
            return 1 + depth(e->base());
        case Kind::sum:
        case Kind::product: {
            int m = 0;
            for (const auto& op : e->operands()) m = std::max(m, depth(op));
            return m;
        }
    }
    return 0;
}

std::size_t node_count(const ExprPtr& e) {
    std::size_t n = 1;
    for (const auto& op : e->operands()) n += node_count(op);
    return n;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case Kind::variable:
            return true;
        case Kind::constant:
            return a->value() == b->value();
        case Kind::apply:
            if (a->func() != b->func()) return false;
            break;
        case Kind::power:
            if (a->exponent() != b->exponent()) return false;
            break;
        case Kind::sum:
        case Kind::product:
            break;
    }
    const auto& oa = a->operands();
    const auto& ob = b->operands();
    if (oa.size() != ob.size()) return false;
    for (std::size_t i = 0; i < oa.size(); ++i)
        if (!equal(oa[i], ob[i])) return false;
    return true;
}

int compare(const ExprPtr& a, const ExprPtr& b) {
    const bool ca = a->is_constant(), cb = b->is_constant();
    if (ca != cb) return ca ? -1 : 1;
    if (ca) {
        if (a->value() < b->value()) return -1;
        if (b->value() < a->value()) return 1;
        return 0;
    }
    const int da = depth(a), db = depth(b);
    if (da != db) return da < db ? -1 : 1;
    const std::size_t na = node_count(a), nb = node_count(b);
    if (na != nb) return na < nb ? -1 : 1;
    const std::string ra = render(a), rb = render(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    return 0;
}

bool contains(const ExprPtr& parent, const ExprPtr& child) {
    if (equal(parent, child)) return true;
    for (const auto& op : parent->operands())
        if (contains(op, child)) return true;
    return false;
}

bool x_dependent(const ExprPtr& e) {
    if (e->is_variable()) return true;
    for (const auto& op : e->operands())
        if (x_dependent(op)) return true;
    return false;
}

std::vector<ExprPtr> terms(const ExprPtr& e) {
    if (e->is(Kind::sum)) return e->operands();
    return {e};
}

Factors factors(const ExprPtr& e) {
    if (e->is(Kind::sum))
        throw std::invalid_argument("factors() of a sum; take terms() first");
    Factors out;
    out.coefficient = Rational(1);
    if (e->is_constant()) {
        out.coefficient = e->value();
        return out;
    }
    if (!e->is(Kind::product)) {
        out.parts.push_back(e);
        return out;
    }
    for (const auto& op : e->operands()) {
        if (op->is_constant())
            out.coefficient *= op->value();
        else
            out.parts.push_back(op);
    }
    return out;
}

// --- canonicalization ------------------------------------------------------

namespace {

ExprPtr canon(const ExprPtr& e);

void flatten_into(Kind k, const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind() == k) {
        for (const auto& op : e->operands()) flatten_into(k, op, out);
    } else {
        out.push_back(e);
    }
}

ExprPtr canon_sum(const std::vector<ExprPtr>& raw_ops) {
    std::vector<ExprPtr> flat;
    for (const auto& op : raw_ops) flatten_into(Kind::sum, canon(op), flat);

    Rational c(0);
    std::vector<ExprPtr> ops;
    for (auto& op : flat) {
        if (op->is_constant())
            c += op->value();
        else
            ops.push_back(std::move(op));
    }
    if (c != 0) ops.push_back(Expr::make_constant(c));
    if (ops.empty()) return Expr::make_constant(Rational(0));
    if (ops.size() == 1) return ops[0];
    std::stable_sort(ops.begin(), ops.end(),
                     [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    return Expr::make_sum(std::move(ops));
}

ExprPtr canon_product(const std::vector<ExprPtr>& raw_ops) {
    std::vector<ExprPtr> flat;
    for (const auto& op : raw_ops) flatten_into(Kind::product, canon(op), flat);

    Rational c(1);
    std::vector<ExprPtr> ops;
    for (auto& op : flat) {
        if (op->is_constant())
            c *= op->value();
        else
            ops.push_back(std::move(op));
    }
    if (c == 0) return Expr::make_constant(Rational(0));
    if (c != 1) ops.push_back(Expr::make_constant(c));
    if (ops.empty()) return Expr::make_constant(Rational(1));
    if (ops.size() == 1) return ops[0];
    std::stable_sort(ops.begin(), ops.end(),
                     [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    return Expr::make_product(std::move(ops));
}

ExprPtr canon_power(const ExprPtr& raw_base, long long n) {
    ExprPtr base = canon(raw_base);
    if (n == 0) return Expr::make_constant(Rational(1));
    if (n == 1) return base;
    if (base->is_constant()) {
        const Rational& v = base->value();
        if (v != 0 || n > 0) return Expr::make_constant(rat_pow(v, n));
        // 0^negative cannot be folded; keep the node, evaluation reports it
    }
    return Expr::make_power(std::move(base), n);
}

ExprPtr canon(const ExprPtr& e) {
    switch (e->kind()) {
        case Kind::variable:
        case Kind::constant:
            return e;
        case Kind::apply:
            return Expr::make_apply(e->func(), canon(e->arg()));
        case Kind::power:
            return canon_power(e->base(), e->exponent());
        case Kind::sum:
            return canon_sum(e->operands());
        case Kind::product:
            return canon_product(e->operands());
    }
    return e;
}

}  // namespace

ExprPtr canonicalize(const ExprPtr& e) { return canon(e); }

ExprPtr variable() { return Expr::make_variable(); }

ExprPtr constant(long long v) { return Expr::make_constant(Rational(v)); }

ExprPtr constant(Rational v) { return Expr::make_constant(std::move(v)); }

ExprPtr apply(Func f, ExprPtr arg) { return Expr::make_apply(f, canon(arg)); }

ExprPtr power(ExprPtr base, long long exponent) { return canon_power(base, exponent); }

ExprPtr sum(std::vector<ExprPtr> operands) { return canon_sum(operands); }

ExprPtr product(std::vector<ExprPtr> operands) { return canon_product(operands); }

}  // namespace diffdec
