#ifndef LST_TOOLS_WORKLOAD_HPP
#define LST_TOOLS_WORKLOAD_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl {

enum class OpKind {
    Insert,
    Select,
    Rank,
    Contains,
    Succ,
    Pred,
    Min,
    Max,
    PopMin,
    PopMax,
    Delete,
    ChangeKey,
    Split,
    Merge,
    Use,
};

struct Op {
    OpKind kind;
    std::int64_t key = 0;    // insert / rank / contains / succ / pred / change_key
    std::uint64_t rank = 0;  // select / split
    std::uint64_t idx = 0;   // delete / change_key (@insertion-index)
    std::uint64_t a = 0;     // merge lhs tid / use tid
    std::uint64_t b = 0;     // merge rhs tid
    int line = 0;
};

struct Script {
    std::vector<Op> ops;
};

class ScriptError : public std::runtime_error {
public:
    ScriptError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Script parse(const std::string& text); // throws ScriptError
std::string to_text(const Script& s);

using Params = std::map<std::string, std::string>;

// scenarios: uniform(n,q), clustered(n,q,k), pq(n), depq(n), multiselect(n,ranks),
// splitrank(n,splits), incsort(n,q). Deterministic per seed.
Script generate(const std::string& scenario, const Params& params, std::uint64_t seed);

Params parse_params(const std::string& csv); // "k=v,k=v"

struct RunOptions {
    bool verify = false;
    int mode = 1; // lst_mode value; 1 = randomized pivoting
    std::uint64_t seed = 0;
    std::string csv_path;
    bool check_invariants = false;   // full audit after every op (slow)
    bool check_interval_bound = false; // per-query interval budget audit
    bool collect_answers = false;    // record keys emitted by select/min/max/pop ops
    bool echo_splits = false;        // print assigned tree ids to stdout
};

struct TreeRow {
    std::uint64_t tree_id = 0;
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t comparisons = 0; // lifetime, including ancestor trees
    double b = 0.0;
    double uniform_bound = 0.0;
    std::uint64_t gaps = 0;
    std::uint64_t intervals = 0;
    std::uint64_t chunks = 0;
    std::uint64_t time_ns = 0;
};

struct RunReport {
    std::uint64_t ops_executed = 0;
    std::uint64_t mismatches = 0;
    std::string first_mismatch;
    std::uint64_t op_errors = 0; // stale/out-of-range references, reported and skipped
    std::string first_error;

    std::uint64_t total_comparisons = 0; // across all trees, retired ones included
    std::uint64_t total_queries = 0;
    std::uint64_t chunks_created = 0;
    std::uint64_t base_chunks = 0;
    std::uint64_t bound_violations = 0;
    std::string invariant_failure;

    std::uint64_t insert_ops = 0;
    std::uint64_t insert_comparisons = 0;

    std::uint64_t final_n = 0; // live trees combined
    double final_b = 0.0;
    std::uint64_t live_trees = 0;
    std::uint64_t wall_ns = 0;

    std::vector<TreeRow> rows;
    std::vector<std::int64_t> answers;
};

RunReport run(const Script& s, const RunOptions& opt); // throws ScriptError on malformed refs

// key=value summary block
std::string summarize(const RunReport& r);

// comparative benchmark (warn-only wall-time checks)
struct BenchOptions {
    std::string scenario = "uniform";
    Params params;
    std::vector<std::uint64_t> grid; // values of n
    int repeats = 3;
    int mode = 1;
    std::uint64_t seed = 0;
    std::string csv_path;
};

struct BenchRow {
    std::string scenario;
    std::uint64_t n = 0;
    std::string impl;
    std::uint64_t comparisons = 0;
    std::uint64_t time_ns = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<std::string> warnings;
    std::vector<std::int64_t> heap_pop_keys; // from the last heap-compatible run
    std::vector<std::int64_t> lst_pop_keys;
};

BenchReport bench(const BenchOptions& opt);
std::string bench_csv(const BenchReport& r);

} // namespace wl

#endif
