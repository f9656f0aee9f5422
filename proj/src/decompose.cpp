#include "diffdec/decompose.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diffdec/calculus.hpp"

namespace diffdec {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::chain: return "chain";
        case Rule::product: return "product";
        case Rule::sum: return "sum";
    }
    return "?";
}

// --- decomposition operators ---------------------------------------------

std::optional<ExprPtr> decompose_chain(const ExprPtr& p) {
    ExprPtr inner;
    if (p->is(Kind::apply))
        inner = p->arg();
    else if (p->is(Kind::power))
        inner = p->base();
    else
        return std::nullopt;
    if (inner->is_variable() || inner->is_constant()) return std::nullopt;
    return inner;
}

std::optional<std::pair<ExprPtr, ExprPtr>> decompose_product(const ExprPtr& p) {
    if (!p->is(Kind::product)) return std::nullopt;
    const auto& ops = p->operands();
    std::size_t x_deps = 0, first_x = ops.size();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (x_dependent(ops[i])) {
            ++x_deps;
            if (first_x == ops.size()) first_x = i;
        }
    }
    if (x_deps < 2) return std::nullopt;  // constant multiples stay whole
    std::vector<ExprPtr> rest;
    rest.reserve(ops.size() - 1);
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (i != first_x) rest.push_back(ops[i]);
    ExprPtr v = rest.size() == 1 ? rest[0] : product(std::move(rest));
    return std::make_pair(ops[first_x], v);
}

std::optional<std::pair<ExprPtr, ExprPtr>> decompose_sum(const ExprPtr& p) {
    if (!p->is(Kind::sum)) return std::nullopt;
    const auto& ops = p->operands();
    std::vector<ExprPtr> rest(ops.begin() + 1, ops.end());
    ExprPtr v = rest.size() == 1 ? rest[0] : sum(std::move(rest));
    return std::make_pair(ops[0], v);
}

// --- V1 ------------------------------------------------------------------

bool verify_easier(const ExprPtr& p, const ExprPtr& c, Rule rule) {
    const int dp = depth(p), dc = depth(c);
    if (rule == Rule::chain) return dc < dp;
    return dc <= dp && node_count(c) < node_count(p);
}

// --- V2 ----------------------------------------------------------------
//
// The child's derivative sc must appear inside the parent's derivative sp.
// Canonical forms are flattened, so the check runs over several routes:
//
//   1. sc is equivalent to a whole additive term of sp (exact constants);
//   2. sc is equivalent to a single factor of some term (covers chain
//      parents whose inner derivative is a sum);
//   3. each term of sc embeds into a distinct term of sp, where embedding
//      means factor-multiset containment with coefficients unconstrained
//      (canonicalization redistributes numeric coefficients), and purely
//      constant terms must map to the constant term;
//   4. a constant sc may equal some term's coefficient exactly.
//
// Route 3 with a single term is the plain factor-containment check; the
// multi-term form is what the k-ary product rule and the flattened sum
// rule require of their "rest" children.

namespace {

struct HelpfulSearch {
    const EquivalenceOptions& opts;
    bool saw_inconclusive = false;

    bool equiv(const ExprPtr& a, const ExprPtr& b) {
        EquivalenceVerdict v = equivalent(a, b, opts);
        if (v.outcome == Equivalence::insufficient_domain) saw_inconclusive = true;
        return v.outcome == Equivalence::equivalent;
    }

    // Injective matching of child factors into term factors.
    bool match_factors(const std::vector<ExprPtr>& cf, const std::vector<ExprPtr>& tf,
                       std::size_t i, std::vector<bool>& used,
                       std::vector<std::size_t>* picks) {
        if (i == cf.size()) return true;
        for (std::size_t j = 0; j < tf.size(); ++j) {
            if (used[j] || !equiv(cf[i], tf[j])) continue;
            used[j] = true;
            if (picks) picks->push_back(j);
            if (match_factors(cf, tf, i + 1, used, picks)) return true;
            used[j] = false;
            if (picks) picks->pop_back();
        }
        return false;
    }

    // One child term into one parent term.
    bool embed_term(const ExprPtr& tc, const ExprPtr& tp, std::vector<std::size_t>* picks) {
        if (tc->is_constant()) return tp->is_constant();
        if (tp->is(Kind::sum)) return false;  // parent terms are never sums
        Factors fc = factors(tc), fp = factors(tp);
        if (fc.parts.empty()) return false;
        if (fc.parts.size() > fp.parts.size()) return false;
        std::vector<bool> used(fp.parts.size(), false);
        return match_factors(fc.parts, fp.parts, 0, used, picks);
    }

    // Injective mapping of all child terms onto distinct parent terms.
    bool embed_all_terms(const std::vector<ExprPtr>& tc, const std::vector<ExprPtr>& tp,
                         std::size_t i, std::vector<bool>& used) {
        if (i == tc.size()) return true;
        for (std::size_t j = 0; j < tp.size(); ++j) {
            if (used[j] || !embed_term(tc[i], tp[j], nullptr)) continue;
            used[j] = true;
            if (embed_all_terms(tc, tp, i + 1, used)) return true;
            used[j] = false;
        }
        return false;
    }
};

}  // namespace

namespace detail {

CheckOutcome verify_helpful_impl(const ExprPtr& sp, const ExprPtr& sc,
                                 const EquivalenceOptions& opts, VerificationDetails* details) {
    HelpfulSearch search{opts};
    const std::vector<ExprPtr> tp = terms(sp);
    const std::vector<ExprPtr> tc = terms(sc);

    // route 1: whole-term match, constants included
    for (std::size_t j = 0; j < tp.size(); ++j) {
        if (search.equiv(sc, tp[j])) {
            if (details) {
                details->helpful_by_term = true;
                details->matched_term = j;
            }
            return CheckOutcome::pass;
        }
    }

    // route 2: the child solution as a single factor of some term
    for (std::size_t j = 0; j < tp.size(); ++j) {
        if (tp[j]->is(Kind::sum) || tp[j]->is_constant()) continue;
        Factors fp = factors(tp[j]);
        for (std::size_t k = 0; k < fp.parts.size(); ++k) {
            if (search.equiv(sc, fp.parts[k])) {
                if (details) {
                    details->matched_term = j;
                    details->matched_factors = {k};
                }
                return CheckOutcome::pass;
            }
        }
    }

    // route 3: per-term embedding into distinct parent terms
    if (tc.size() <= tp.size()) {
        if (tc.size() == 1 && !tc[0]->is_constant()) {
            // single term: record the matched factor indices
            for (std::size_t j = 0; j < tp.size(); ++j) {
                std::vector<std::size_t> picks;
                if (!tp[j]->is(Kind::sum) && search.embed_term(tc[0], tp[j], &picks)) {
                    if (details) {
                        details->matched_term = j;
                        details->matched_factors = picks;
                    }
                    return CheckOutcome::pass;
                }
            }
        } else {
            std::vector<bool> used(tp.size(), false);
            if (search.embed_all_terms(tc, tp, 0, used)) return CheckOutcome::pass;
        }
    }

    // route 4: constant child derivative equals a term coefficient
    if (sc->is_constant()) {
        for (std::size_t j = 0; j < tp.size(); ++j) {
            if (tp[j]->is(Kind::sum)) continue;
            if (factors(tp[j]).coefficient == sc->value()) {
                if (details) details->matched_term = j;
                return CheckOutcome::pass;
            }
        }
    }

    if (search.saw_inconclusive) {
        if (details) details->helpful_inconclusive = true;
        return CheckOutcome::inconclusive;
    }
    return CheckOutcome::fail;
}

}  // namespace detail

CheckOutcome verify_helpful(const ExprPtr& p, const ExprPtr& c, const EquivalenceOptions& opts) {
    return detail::verify_helpful_impl(differentiate(p), differentiate(c), opts, nullptr);
}

// --- V3 -----------------------------------------------------------------

namespace {

// c must equal one operand or the combination of a proper operand subset.
// Canonical sorting makes subset products/sums canonical as-is, so the
// check reduces to multiset containment of c's pieces in p's operands.
bool proper_subset_combination(const ExprPtr& p, const ExprPtr& c, Kind kind) {
    const auto& pops = p->operands();
    std::vector<ExprPtr> cops;
    if (c->kind() == kind)
        cops = c->operands();
    else
        cops = {c};
    if (cops.size() >= pops.size()) return false;
    std::vector<bool> used(pops.size(), false);
    for (const auto& co : cops) {
        bool found = false;
        for (std::size_t j = 0; j < pops.size(); ++j) {
            if (!used[j] && equal(co, pops[j])) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::optional<Rule> verify_related(const ExprPtr& p, const ExprPtr& c) {
    if (!contains(p, c)) return std::nullopt;
    if (p->is(Kind::apply) && equal(p->arg(), c)) return Rule::chain;
    if (p->is(Kind::power) && equal(p->base(), c)) return Rule::chain;
    if (p->is(Kind::product) && proper_subset_combination(p, c, Kind::product))
        return Rule::product;
    if (p->is(Kind::sum) && proper_subset_combination(p, c, Kind::sum)) return Rule::sum;
    return std::nullopt;
}

// --- complete predicate -----------------------------------------------------

VerificationReport verify(const ExprPtr& p, const ExprPtr& c, const EquivalenceOptions& opts) {
    VerificationReport r;
    r.details.parent_depth = depth(p);
    r.details.child_depth = depth(c);
    r.details.parent_nodes = node_count(p);
    r.details.child_nodes = node_count(c);

    r.v3 = verify_related(p, c);
    r.v1 = verify_easier(p, c, r.v3.value_or(Rule::chain));
    CheckOutcome helpful =
        detail::verify_helpful_impl(differentiate(p), differentiate(c), opts, &r.details);
    r.v2 = helpful == CheckOutcome::pass;
    r.overall = r.v1 && r.v2 && r.v3.has_value();
    return r;
}

std::vector<std::pair<ExprPtr, Rule>> decompose(const ExprPtr& p, const EquivalenceOptions& opts) {
    std::vector<std::pair<ExprPtr, Rule>> out;
    if (depth(p) <= 1) return out;

    std::vector<std::pair<ExprPtr, Rule>> candidates;
    if (auto g = decompose_chain(p)) candidates.emplace_back(*g, Rule::chain);
    if (auto uv = decompose_product(p)) {
        candidates.emplace_back(uv->first, Rule::product);
        candidates.emplace_back(uv->second, Rule::product);
    }
    if (auto uv = decompose_sum(p)) {
        candidates.emplace_back(uv->first, Rule::sum);
        candidates.emplace_back(uv->second, Rule::sum);
    }

    std::vector<std::string> seen;
    for (auto& [child, rule] : candidates) {
        std::string key = render(child) + "#" + rule_name(rule);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        VerificationReport rep = verify(p, child, opts);
        if (rep.overall) {
            seen.push_back(std::move(key));
            out.emplace_back(std::move(child), rule);
        }
    }
    return out;
}

// --- trees -------------------------------------------------------------

std::vector<std::size_t> DecompositionTree::children_of(std::size_t node) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges)
        if (e.parent == node) out.push_back(e.child);
    return out;
}

namespace {

int descent_depth_from(const DecompositionTree& t, std::size_t node,
                       std::vector<int>& memo) {
    if (memo[node] >= 0) return memo[node];
    int best = 0;
    for (const auto& e : t.edges) {
        if (e.parent != node) continue;
        int step = t.nodes[e.child].problem.depth < t.nodes[node].problem.depth ? 1 : 0;
        best = std::max(best, step + descent_depth_from(t, e.child, memo));
    }
    memo[node] = best;
    return best;
}

int path_depth_from(const DecompositionTree& t, std::size_t node, std::vector<int>& memo) {
    if (memo[node] >= 0) return memo[node];
    int best = 0;
    for (const auto& e : t.edges) {
        if (e.parent != node) continue;
        best = std::max(best, 1 + path_depth_from(t, e.child, memo));
    }
    memo[node] = best;
    return best;
}

}  // namespace

int DecompositionTree::depth() const {
    if (nodes.empty()) return 0;
    std::vector<int> memo(nodes.size(), -1);
    return descent_depth_from(*this, root, memo);
}

int DecompositionTree::longest_path() const {
    if (nodes.empty()) return 0;
    std::vector<int> memo(nodes.size(), -1);
    return path_depth_from(*this, root, memo);
}

namespace {

struct TreeBuilder {
    const EquivalenceOptions& opts;
    const int root_depth;
    const std::string& root_id;
    DecompositionTree tree;
    std::map<std::string, std::size_t> index_by_render;
    std::vector<bool> expanded;

    std::size_t add_node(const ExprPtr& e) {
        std::string key = render(e);
        auto it = index_by_render.find(key);
        if (it != index_by_render.end()) return it->second;
        std::size_t idx = tree.nodes.size();
        std::string id = idx == 0 ? root_id : root_id + "." + std::to_string(idx);
        tree.nodes.push_back({make_problem(id, e), 0});
        expanded.push_back(false);
        index_by_render.emplace(std::move(key), idx);
        return idx;
    }

    // descent = number of difficulty decreases on the path from the root
    void expand(std::size_t node, int descent) {
        if (descent > root_depth)
            throw std::runtime_error(
                "decomposition descended past the root difficulty (V1 violation)");
        if (expanded[node]) return;
        expanded[node] = true;
        const Problem prob = tree.nodes[node].problem;
        for (auto& [child_expr, rule] : decompose(prob.expr, opts)) {
            std::size_t child = add_node(child_expr);
            VerificationReport rep = verify(prob.expr, child_expr, opts);
            tree.edges.push_back({node, child, rule, rep});
            int child_descent =
                descent + (tree.nodes[child].problem.depth < prob.depth ? 1 : 0);
            expand(child, child_descent);
        }
    }

    // Occurrence counts in the fully expanded tree: the root occurs once,
    // every edge contributes its parent's count to the child.
    void recompute_multiplicities() {
        for (auto& n : tree.nodes) n.multiplicity = 0;
        tree.nodes[tree.root].multiplicity = 1;
        for (std::size_t node : topological_order()) {
            for (const auto& e : tree.edges) {
                if (e.parent != node) continue;
                tree.nodes[e.child].multiplicity += tree.nodes[node].multiplicity;
            }
        }
    }

    std::vector<std::size_t> topological_order() const {
        std::vector<std::size_t> indeg(tree.nodes.size(), 0);
        for (const auto& e : tree.edges) ++indeg[e.child];
        std::vector<std::size_t> stack, order;
        for (std::size_t i = 0; i < tree.nodes.size(); ++i)
            if (indeg[i] == 0) stack.push_back(i);
        while (!stack.empty()) {
            std::size_t n = stack.back();
            stack.pop_back();
            order.push_back(n);
            for (const auto& e : tree.edges) {
                if (e.parent != n) continue;
                if (--indeg[e.child] == 0) stack.push_back(e.child);
            }
        }
        return order;
    }
};

}  // namespace

DecompositionTree build_tree(const Problem& p, const EquivalenceOptions& opts) {
    TreeBuilder builder{opts, p.depth, p.id, {}, {}, {}};
    std::size_t root = builder.add_node(p.expr);
    builder.tree.root = root;
    builder.tree.nodes[root].problem.id = p.id;  // keep the caller's id
    builder.expand(root, 0);
    builder.recompute_multiplicities();
    return builder.tree;
}

// --- pretty printer ----------------------------------------------------------

namespace {

std::string generation_label(int dist, bool leaf) {
    if (dist == 0) return "Root";
    if (leaf) return "Leaf";
    switch (dist) {
        case 1: return "Child";
        case 2: return "Grandchild";
        case 3: return "Great-grandchild";
        default: return "Descendant-" + std::to_string(dist);
    }
}

// Display width in codepoints; the table mixes ASCII with the delta and
// check-mark glyphs.
std::size_t utf8_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

}  // namespace

std::string tree_table(const DecompositionTree& tree) {
    struct Row {
        std::string level, problem, difficulty, delta, rule, v1, v2, v3;
    };
    std::vector<Row> rows;
    rows.push_back({"Level", "Problem", "Difficulty", "d", "Rule", "V1", "V2", "V3"});

    // depth-first discovery; each node printed once, with the report of the
    // edge by which it was first reached
    std::vector<bool> seen(tree.nodes.size(), false);
    struct Item {
        std::size_t node;
        int dist;
        const DecompositionTree::Edge* via;
    };
    std::vector<Item> stack{{tree.root, 0, nullptr}};
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        if (seen[item.node]) continue;
        seen[item.node] = true;
        const Problem& prob = tree.nodes[item.node].problem;
        bool leaf = tree.children_of(item.node).empty();
        Row row;
        row.level = generation_label(item.dist, leaf);
        row.problem = "d/dx[" + render(prob.expr) + "]";
        row.difficulty = "D" + std::to_string(prob.level);
        row.delta = std::to_string(prob.depth);
        if (item.via) {
            row.rule = rule_name(item.via->rule);
            row.rule[0] = static_cast<char>(std::toupper(row.rule[0]));
            row.v1 = item.via->report.v1 ? "yes" : "no";
            row.v2 = item.via->report.v2 ? "yes" : "no";
            row.v3 = item.via->report.v3.has_value() ? "yes" : "no";
        } else {
            row.rule = row.v1 = row.v2 = row.v3 = "-";
        }
        rows.push_back(std::move(row));
        // push children in reverse so they pop in edge order
        std::vector<const DecompositionTree::Edge*> out;
        for (const auto& e : tree.edges)
            if (e.parent == item.node) out.push_back(&e);
        for (auto it = out.rbegin(); it != out.rend(); ++it)
            stack.push_back({(*it)->child, item.dist + 1, *it});
    }

    auto width = [&rows](auto field) {
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, (r.*field).size());
        return w;
    };
    const std::size_t wl = width(&Row::level), wp = width(&Row::problem),
                      wd = width(&Row::difficulty), wdel = width(&Row::delta),
                      wr = width(&Row::rule), w1 = width(&Row::v1), w2 = width(&Row::v2),
                      w3 = width(&Row::v3);
    std::ostringstream os;
    auto pad = [&os](const std::string& s, std::size_t w, bool last = false) {
        os << s;
        if (!last)
            os << std::string(w - s.size() + 2, ' ');
    };
    for (const auto& r : rows) {
        pad(r.level, wl);
        pad(r.problem, wp);
        pad(r.difficulty, wd);
        pad(r.delta, wdel);
        pad(r.rule, wr);
        pad(r.v1, w1);
        pad(r.v2, w2);
        pad(r.v3, w3, true);
        os << '\n';
    }
    return os.str();
}

}  // namespace diffdec
