#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "diffdec/expr.hpp"

namespace diffdec {

namespace {

// Exponents live in a plain long long; anything wider is rejected rather
// than silently wrapped.
constexpr std::size_t kMaxExponentDigits = 18;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return canonicalize(e);
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // expr := term (("+"|"-") term)*
    ExprPtr parse_expr() {
        std::vector<ExprPtr> ops{parse_term()};
        for (;;) {
            if (eat('+')) {
                ops.push_back(parse_term());
            } else if (eat('-')) {
                ops.push_back(Expr::make_product({Expr::make_constant(Rational(-1)), parse_term()}));
            } else {
                break;
            }
        }
        return ops.size() == 1 ? ops[0] : Expr::make_sum(std::move(ops));
    }

    // term := unary ("*" unary)*
    ExprPtr parse_term() {
        std::vector<ExprPtr> ops{parse_unary()};
        while (eat('*')) ops.push_back(parse_unary());
        return ops.size() == 1 ? ops[0] : Expr::make_product(std::move(ops));
    }

    // unary := "-" unary | power
    ExprPtr parse_unary() {
        if (eat('-'))
            return Expr::make_product({Expr::make_constant(Rational(-1)), parse_unary()});
        return parse_power();
    }

    // power := atom ("^" integer)?
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (eat('^')) return Expr::make_power(std::move(base), parse_exponent());
        return base;
    }

    long long parse_exponent() {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer exponent");
        if (pos_ - start > kMaxExponentDigits) {
            pos_ = start;
            fail("exponent out of range");
        }
        long long v = std::stoll(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    // atom := "x" | number | func "(" expr ")" | "(" expr ")"
    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t frac = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == frac) fail("expected digits after decimal point");
        }
        return Expr::make_constant(rat_from_decimal(std::string(text_.substr(start, pos_ - start))));
    }

    ExprPtr parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expr::make_variable();
        Func f;
        if (name == "sin") f = Func::sin;
        else if (name == "cos") f = Func::cos;
        else if (name == "tan") f = Func::tan;
        else if (name == "exp") f = Func::exp;
        else if (name == "log") f = Func::log;
        else {
            pos_ = start;
            fail("unknown function name '" + std::string(name) + "'");
        }
        if (!eat('(')) fail("expected '(' after function name");
        ExprPtr arg = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return Expr::make_apply(f, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace diffdec
