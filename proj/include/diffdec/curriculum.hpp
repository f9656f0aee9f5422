#ifndef DIFFDEC_CURRICULUM_HPP_
#define DIFFDEC_CURRICULUM_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffdec/decompose.hpp"
#include "diffdec/problem.hpp"
#include "diffdec/rng.hpp"

namespace diffdec {

struct GeneratorConfig {
    std::map<int, std::size_t> per_level{{1, 100}, {2, 100}, {3, 100}, {4, 100}, {5, 100}};
    std::uint64_t seed = 0;
    int exponent_min = 2;
    int exponent_max = 5;
    // composition / product / sum pick probabilities for interior nodes
    double weight_composition = 0.5;
    double weight_product = 0.25;
    double weight_sum = 0.25;
    // integer coefficients drawn from [-constant_bound, constant_bound] \ {0}
    int constant_bound = 5;

    void validate() const;  // throws std::invalid_argument
};

// One problem with depth exactly `level`. Deterministic given the rng
// state; resamples degenerate draws. Throws std::runtime_error when the
// resample limit is exceeded (an impossible config).
Problem generate_problem(int level, Rng& rng, const GeneratorConfig& cfg = {});

// Outcome of generate_dataset: per-level counts can be capped when a level's
// distinct population is smaller than requested (relevant for level 1).
struct DatasetWarning {
    int level = 0;
    std::size_t requested = 0;
    std::size_t produced = 0;
};

std::vector<Problem> generate_dataset(const GeneratorConfig& cfg,
                                      std::vector<DatasetWarning>* warnings = nullptr);

// --- curriculum -----------------------------------------------------------

struct CurriculumEntry {
    Problem problem;
    std::size_t multiplicity = 1;
    std::vector<std::string> parents;  // ids of entries this one feeds into
    std::optional<Rule> rule;          // rule deriving this entry (first edge), none for targets
    std::vector<std::string> sources;  // target ids whose trees contain this node
};

struct CurriculumEdge {
    std::size_t parent = 0;  // entry indices; child always precedes parent
    std::size_t child = 0;
    Rule rule = Rule::chain;
};

// Topologically ordered problem sequence: levels non-decreasing, every
// decomposition child placed before its parent, entries deduplicated by
// canonical expression with occurrence multiplicity.
struct Curriculum {
    std::vector<CurriculumEntry> entries;
    std::vector<CurriculumEdge> edges;
    // per-level [begin, end) ranges into entries, keyed by level
    std::map<int, std::pair<std::size_t, std::size_t>> strata;
};

Curriculum build_curriculum(const std::vector<Problem>& targets,
                            const EquivalenceOptions& opts = {});

struct CurriculumStats {
    std::map<int, std::size_t> distinct_per_level;
    std::map<int, std::size_t> multiplicity_per_level;
    std::map<Rule, std::size_t> edges_per_rule;
    std::size_t total_entries = 0;
    std::size_t total_multiplicity = 0;
};

CurriculumStats curriculum_stats(const Curriculum& c);

// Audits the ordering invariants; returns a description of the first
// violation, or nullopt when the curriculum is sound.
std::optional<std::string> check_curriculum(const Curriculum& c);

// --- JSONL persistence ---------------------------------------------------

// Problem record:    {"id","problem","answer","depth","level"}
// Curriculum record: adds {"multiplicity","parents","rule","order"}
// Writes are atomic (temp file + rename).

class JsonlError : public std::runtime_error {
public:
    JsonlError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    explicit JsonlError(const std::string& what) : std::runtime_error(what), line_(0) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

void export_jsonl(const std::vector<Problem>& problems, const std::string& path);
void export_jsonl(const Curriculum& curriculum, const std::string& path);
std::vector<Problem> import_problems_jsonl(const std::string& path);
Curriculum import_curriculum_jsonl(const std::string& path);

}  // namespace diffdec

#endif  // DIFFDEC_CURRICULUM_HPP_
