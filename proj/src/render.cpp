#include <cassert>
#include <sstream>
#include <string>

#include "diffdec/expr.hpp"

namespace diffdec {

std::string rat_decimal_string(const Rational& r) {
    assert(rat_decimal_exact(r));
    BigInt num = rat_num(r), den = rat_den(r);
    bool neg = num < 0;
    if (neg) num = -num;
    if (den == 1) return (neg ? "-" : "") + num.str();
    // scale denominator 2^a 5^b to a power of ten
    BigInt d = den;
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    unsigned digits = std::max(twos, fives);
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = num * (scale / den);
    std::string s = scaled.str();
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return (neg ? "-" : "") + s;
}

Rational rat_from_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(BigInt(digits), den);
}

namespace {

void render_node(const ExprPtr& e, std::string& out);

// Constants without a finite decimal expansion fall back to "p*q^-1",
// which reparses to the same rational.
void render_constant(const Rational& v, std::string& out) {
    if (rat_decimal_exact(v)) {
        out += rat_decimal_string(v);
        return;
    }
    BigInt num = rat_num(v), den = rat_den(v);
    if (num < 0) {
        out += '-';
        num = -num;
    }
    if (num != 1) {
        out += num.str();
        out += '*';
    }
    out += den.str();
    out += "^-1";
}

bool product_needs_parens(const ExprPtr& op) {
    return op->is(Kind::sum) || op->is(Kind::product);
}

void render_product_operand(const ExprPtr& op, std::string& out) {
    if (product_needs_parens(op)) {
        out += '(';
        render_node(op, out);
        out += ')';
    } else {
        render_node(op, out);
    }
}

void render_product(const ExprPtr& e, std::string& out) {
    const auto& ops = e->operands();
    std::size_t first = 0;
    if (ops[0]->is_constant()) {
        const Rational& c = ops[0]->value();
        if (c == -1 && ops.size() > 1) {
            out += '-';
            first = 1;
        }
        // other constants render in place as the leading factor
    }
    for (std::size_t i = first; i < ops.size(); ++i) {
        if (i > first) out += '*';
        render_product_operand(ops[i], out);
    }
}

// Splits off a leading minus so sums read "a - b" instead of "a + -1*b".
bool negative_head(const ExprPtr& op, ExprPtr& positive) {
    if (op->is_constant() && op->value() < 0) {
        positive = Expr::make_constant(-op->value());
        return true;
    }
    if (op->is(Kind::product) && op->operands()[0]->is_constant() &&
        op->operands()[0]->value() < 0) {
        std::vector<ExprPtr> rest(op->operands().begin() + 1, op->operands().end());
        const Rational neg = -op->operands()[0]->value();
        if (neg != 1) rest.insert(rest.begin(), Expr::make_constant(neg));
        positive = rest.size() == 1 ? rest[0] : Expr::make_product(std::move(rest));
        return true;
    }
    return false;
}

void render_sum(const ExprPtr& e, std::string& out) {
    const auto& ops = e->operands();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        ExprPtr positive;
        if (i == 0) {
            if (ops[i]->is(Kind::sum)) {
                out += '(';
                render_node(ops[i], out);
                out += ')';
            } else {
                render_node(ops[i], out);
            }
            continue;
        }
        if (negative_head(ops[i], positive)) {
            out += " - ";
            render_node(positive, out);
        } else {
            out += " + ";
            if (ops[i]->is(Kind::sum)) {
                out += '(';
                render_node(ops[i], out);
                out += ')';
            } else {
                render_node(ops[i], out);
            }
        }
    }
}

bool power_base_needs_parens(const ExprPtr& base) {
    switch (base->kind()) {
        case Kind::variable:
        case Kind::apply:
            return false;
        case Kind::constant:
            return base->value() < 0 || !rat_is_integer(base->value());
        case Kind::power:
        case Kind::sum:
        case Kind::product:
            return true;
    }
    return true;
}

void render_power(const ExprPtr& e, std::string& out) {
    if (power_base_needs_parens(e->base())) {
        out += '(';
        render_node(e->base(), out);
        out += ')';
    } else {
        render_node(e->base(), out);
    }
    out += '^';
    out += std::to_string(e->exponent());
}

void render_node(const ExprPtr& e, std::string& out) {
    switch (e->kind()) {
        case Kind::variable:
            out += 'x';
            return;
        case Kind::constant:
            render_constant(e->value(), out);
            return;
        case Kind::apply:
            out += func_name(e->func());
            out += '(';
            render_node(e->arg(), out);
            out += ')';
            return;
        case Kind::power:
            render_power(e, out);
            return;
        case Kind::sum:
            render_sum(e, out);
            return;
        case Kind::product:
            render_product(e, out);
            return;
    }
}

}  // namespace

std::string render(const ExprPtr& e) {
    std::string out;
    render_node(e, out);
    return out;
}

}  // namespace diffdec
