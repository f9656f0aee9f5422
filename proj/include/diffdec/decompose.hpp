#ifndef DIFFDEC_DECOMPOSE_HPP_
#define DIFFDEC_DECOMPOSE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffdec/eval.hpp"
#include "diffdec/expr.hpp"
#include "diffdec/problem.hpp"

namespace diffdec {

enum class Rule { chain, product, sum };

const char* rule_name(Rule r);

// Tri-state result for the helpfulness check: the equivalence sampler can
// come back inconclusive when too few points are admissible.
enum class CheckOutcome { pass, fail, inconclusive };

struct VerificationDetails {
    int parent_depth = 0;
    int child_depth = 0;
    std::size_t parent_nodes = 0;
    std::size_t child_nodes = 0;
    // helpfulness diagnostics
    bool helpful_by_term = false;               // child solution matched a whole term
    std::optional<std::size_t> matched_term;    // term index in the parent solution
    std::vector<std::size_t> matched_factors;   // factor indices within that term
    bool helpful_inconclusive = false;          // equivalence sampling was inconclusive
};

// Report for the complete predicate: easier (V1) and helpful (V2) booleans,
// the matched rule template (V3), and overall = all three.
struct VerificationReport {
    bool v1 = false;
    bool v2 = false;
    std::optional<Rule> v3;
    bool overall = false;
    VerificationDetails details;
};

// --- decomposition operators -----------------------------------------------

// Chain: f(g) or g^n with g != x and g not constant -> inner function g.
std::optional<ExprPtr> decompose_chain(const ExprPtr& p);

// Product: needs >= 2 x-dependent operands. Splits into (first x-dependent
// operand, product of the rest); any constant coefficient stays with the
// rest. Constant multiples (one x-dependent operand) are not decomposed.
std::optional<std::pair<ExprPtr, ExprPtr>> decompose_product(const ExprPtr& p);

// Sum: (first operand, sum of the rest).
std::optional<std::pair<ExprPtr, ExprPtr>> decompose_sum(const ExprPtr& p);

// --- verification predicates -------------------------------------------

// V1. Chain edges need a strict depth decrease; product/sum edges accept
// equal depth but require strictly fewer nodes (this also guarantees
// termination of recursive decomposition).
bool verify_easier(const ExprPtr& p, const ExprPtr& c, Rule rule);

// V2. The child's derivative must appear inside the parent's derivative:
// as a whole additive term (exact), as a factor of some term, or with each
// of its terms embedding (factor-multiset containment, coefficients free)
// into distinct terms of the parent's derivative. See docs/notes in
// decompose.cpp for the exact matching routes.
CheckOutcome verify_helpful(const ExprPtr& p, const ExprPtr& c,
                            const EquivalenceOptions& opts = {});

// V3. Pattern match against the rule templates: inner function of an
// apply/power, a product operand or sub-product, a sum operand or sub-sum.
// Guarded by structural containment.
std::optional<Rule> verify_related(const ExprPtr& p, const ExprPtr& c);

// The complete predicate; works on any candidate pair, not only children
// proposed by decompose(). V1 uses the rule found by verify_related
// (strict-depth chain semantics when no template matches).
VerificationReport verify(const ExprPtr& p, const ExprPtr& c,
                          const EquivalenceOptions& opts = {});

// Children of p via all applicable rule templates, each filtered through
// verify(); empty when depth(p) <= 1.
std::vector<std::pair<ExprPtr, Rule>> decompose(const ExprPtr& p,
                                                const EquivalenceOptions& opts = {});

// --- recursive decomposition trees ------------------------------------------

// Verified decomposition DAG. Duplicate subexpressions are merged into a
// single node; multiplicity counts occurrences in the fully expanded tree.
//
// depth() measures difficulty descent: the maximum number of edges with
// delta(child) < delta(parent) along any root-to-leaf path. Under the
// weak-inequality V1 used for product/sum edges, raw path length can
// exceed the bound of the theory (a product child may keep the parent's
// depth), but the number of descent steps cannot exceed delta(root) - 1.
struct DecompositionTree {
    struct Node {
        Problem problem;
        std::size_t multiplicity = 1;
    };
    struct Edge {
        std::size_t parent = 0;
        std::size_t child = 0;
        Rule rule = Rule::chain;
        VerificationReport report;
    };

    std::vector<Node> nodes;  // index 0 is the root
    std::vector<Edge> edges;
    std::size_t root = 0;

    std::size_t size() const { return nodes.size(); }
    std::vector<std::size_t> children_of(std::size_t node) const;

    // Difficulty-descent depth (see above).
    int depth() const;
    // Longest root-to-leaf path in edges, for diagnostics.
    int longest_path() const;
};

// Builds the verified tree by recursive decomposition down to depth <= 1
// base cases. Throws std::runtime_error if the difficulty descent ever
// exceeds delta(root) (a V1 violation; must never fire).
DecompositionTree build_tree(const Problem& p, const EquivalenceOptions& opts = {});

// Text table of a tree: Level | Problem | Difficulty | delta | Rule | V1 V2 V3,
// one row per node in depth-first discovery order.
std::string tree_table(const DecompositionTree& tree);

}  // namespace diffdec

#endif  // DIFFDEC_DECOMPOSE_HPP_
