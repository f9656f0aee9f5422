#ifndef DIFFDEC_EXPR_HPP_
#define DIFFDEC_EXPR_HPP_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diffdec/rational.hpp"

namespace diffdec {

enum class Kind { variable, constant, apply, power, sum, product };

// Basis functions. Integer powers are represented by Kind::power.
enum class Func { sin, cos, tan, exp, log };

const char* func_name(Func f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree node. Canonical form (see canonicalize) is the
// working representation everywhere; raw make_* constructors exist for the
// parser and for tests that exercise canonicalization itself.
//
// Canonical invariants:
//   - sum/product operands are flattened, sorted (constants first, then by
//     depth, node count, rendered string), contain no identity elements and
//     at most one constant operand; a product containing 0 collapses to 0
//   - power never has exponent 0 or 1; constant bases are folded
//   - like factors are NOT merged (x*x stays a product): merging would
//     change the nesting depth and factor multisets
class Expr {
public:
    static ExprPtr make_variable();
    static ExprPtr make_constant(Rational value);
    static ExprPtr make_apply(Func f, ExprPtr arg);
    static ExprPtr make_power(ExprPtr base, long long exponent);
    static ExprPtr make_sum(std::vector<ExprPtr> operands);      // length >= 2
    static ExprPtr make_product(std::vector<ExprPtr> operands);  // length >= 2

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }
    bool is_constant() const { return kind_ == Kind::constant; }
    bool is_variable() const { return kind_ == Kind::variable; }

    Func func() const { return func_; }              // apply only
    const Rational& value() const { return value_; } // constant only
    long long exponent() const { return exponent_; } // power only

    // apply/power: single element (argument/base); sum/product: 2+.
    const std::vector<ExprPtr>& operands() const { return operands_; }
    const ExprPtr& arg() const { return operands_[0]; }   // apply
    const ExprPtr& base() const { return operands_[0]; }  // power

private:
    Expr(Kind k, Func f, Rational v, long long e, std::vector<ExprPtr> ops)
        : kind_(k), func_(f), value_(std::move(v)), exponent_(e), operands_(std::move(ops)) {}

    Kind kind_;
    Func func_ = Func::sin;
    Rational value_;
    long long exponent_ = 0;
    std::vector<ExprPtr> operands_;
};

// --- canonical builders -----------------------------------------------

ExprPtr variable();
ExprPtr constant(long long v);
ExprPtr constant(Rational v);
ExprPtr apply(Func f, ExprPtr arg);
ExprPtr power(ExprPtr base, long long exponent);
ExprPtr sum(std::vector<ExprPtr> operands);
ExprPtr product(std::vector<ExprPtr> operands);

// Rewrites any expression into canonical form. Idempotent, value-preserving.
ExprPtr canonicalize(const ExprPtr& e);

// --- structural queries ------------------------------------------------

bool equal(const ExprPtr& a, const ExprPtr& b);

// Total order used for canonical operand sorting: constants first (by
// value), then by (depth, node_count, rendered string). Returns <0, 0, >0.
int compare(const ExprPtr& a, const ExprPtr& b);

// Nesting depth: x and constants are 0; apply/power add one; sum/product
// take the max over operands without incrementing.
int depth(const ExprPtr& e);

// Total node count; each sum/product counts as one node plus its operands.
std::size_t node_count(const ExprPtr& e);

// True iff child equals parent or one of its descendant subtrees.
bool contains(const ExprPtr& parent, const ExprPtr& child);

// True iff the variable x occurs somewhere in e.
bool x_dependent(const ExprPtr& e);

// Top-level additive terms ([e] when e is not a sum).
std::vector<ExprPtr> terms(const ExprPtr& e);

struct Factors {
    Rational coefficient;          // aggregated rational coefficient
    std::vector<ExprPtr> parts;    // non-constant multiplicative factors
};

// Splits a non-sum expression into coefficient and non-constant factors.
// Throws std::invalid_argument on sums (take terms first).
Factors factors(const ExprPtr& e);

// --- text form -----------------------------------------------------------

// Deterministic minimal-parentheses rendering; parse(render(e)) == e for
// canonical e. Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := unary ("*" unary)*
//   unary  := "-" unary | power
//   power  := atom ("^" integer)?
//   atom   := "x" | number | func "(" expr ")" | "(" expr ")"
//   func   := "sin"|"cos"|"tan"|"exp"|"log"
//   number := digits ("." digits)?     integer := "-"? digits
std::string render(const ExprPtr& e);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Parses the grammar above and returns the canonical expression.
// "-e" is sugar for (-1)*e and "a - b" for a + (-1)*b.
ExprPtr parse(std::string_view text);

}  // namespace diffdec

#endif  // DIFFDEC_EXPR_HPP_
