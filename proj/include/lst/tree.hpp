#ifndef LST_TREE_HPP
#define LST_TREE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lst/errors.hpp"
#include "lst/gap_index.hpp"
#include "lst/gap_ops.hpp"

namespace lst {

enum class QueryOp : std::uint8_t {
    Rank,
    Select,
    Contains,
    Successor,
    Predecessor,
    Minimum,
    Maximum,
};

struct Query {
    QueryOp op;
    Key key{};
    std::uint64_t rank = 0;

    static Query rank_of(RawKey k) { return {QueryOp::Rank, Key{k}, 0}; }
    static Query select(std::uint64_t r) { return {QueryOp::Select, Key{}, r}; }
    static Query contains(RawKey k) { return {QueryOp::Contains, Key{k}, 0}; }
    static Query successor(RawKey k) { return {QueryOp::Successor, Key{k}, 0}; }
    static Query predecessor(RawKey k) { return {QueryOp::Predecessor, Key{k}, 0}; }
    static Query minimum() { return {QueryOp::Minimum, Key{}, 0}; }
    static Query maximum() { return {QueryOp::Maximum, Key{}, 0}; }
};

// Answer conventions:
//   Rank(k)        rank = 1 + #elements < k (may be n+1); no element payload.
//   Contains(k)    contained flag; payload is some element == k when present.
//   Successor(k)   smallest element with key > k; absent when none.
//   Predecessor(k) largest element with key < k; absent when none.
// effective_rank is the rank the structure organized around: clamped to
// [1, n] (0 only on an empty tree). Every query with n > 0 leaves a gap
// boundary whose prefix sums to effective_rank (effective_rank - 1 for
// Maximum, which isolates the answer as the smallest of the upper gap).
struct QueryResult {
    bool has_element = false;
    Key key{};
    std::uint64_t value = 0;
    Handle handle = nullptr;
    std::uint64_t rank = 0;
    bool contained = false;
    std::uint64_t effective_rank = 0;
};

struct Stats {
    std::uint64_t n = 0;
    std::uint64_t gaps = 0;
    std::uint64_t intervals = 0;
    std::uint64_t chunks_created = 0; // query-time pieces
    std::uint64_t base_chunks = 0;    // construction / gap revival
    std::uint64_t queries = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t parent_comparisons = 0; // final counts of ancestor trees
    std::uint64_t insert_probes = 0;
    std::uint64_t inserts = 0;
    double bound_b = 0.0; // sum of |gap| * log2(n / |gap|)
};

// interval budget per gap: 4 * max(log2(gap_size), 1)
double interval_budget(std::uint64_t gap_size);

class LazySearchTree {
public:
    explicit LazySearchTree(Mode mode = Mode::RandomizedPivot, std::uint64_t seed = 0);
    LazySearchTree(LazySearchTree&&) = default;
    LazySearchTree& operator=(LazySearchTree&&) = default;
    LazySearchTree(const LazySearchTree&) = delete;
    LazySearchTree& operator=(const LazySearchTree&) = delete;

    // Bulk construction: one gap, one interval, zero comparisons.
    static LazySearchTree construct(const std::vector<std::pair<RawKey, std::uint64_t>>& items,
                                    Mode mode = Mode::RandomizedPivot, std::uint64_t seed = 0);

    Handle insert(RawKey k, std::uint64_t value);
    QueryResult query(const Query& q);
    std::pair<RawKey, std::uint64_t> erase(Handle h);
    void change_key(Handle h, RawKey k);

    // Detach ranks r+1..n into a new tree; *this keeps ranks 1..r.
    LazySearchTree split(std::uint64_t r);

    // Absorb a tree whose keys all follow ours. Consumes `upper`.
    void merge(LazySearchTree&& upper);

    std::uint64_t size() const { return n_; }
    Stats stats() const;
    std::uint64_t comparison_count() const { return cmp_.comparisons() + parent_comparisons_; }

    // Full consistency audit (uncounted raw comparisons). Empty string when
    // everything holds, else a description of the first failure.
    std::string check_invariants() const;

    // Cheap audit: number of gaps whose nonempty-interval count exceeds the
    // interval budget.
    std::uint64_t interval_budget_violations() const;

    const GapIndex& index() const { return index_; }
    Mode mode() const { return mode_; }

private:
    void validate_handle(Handle h) const;
    void ensure_seed_gap();
    GapNode* admit_gap(Key k);
    ElementRecord* restructure_at(std::uint64_t r, bool max_convention);
    QueryResult key_query(QueryOp op, Key k);
    void absorb_counters(LazySearchTree& other);

    GapIndex index_;
    Comparator cmp_;
    Rng rng_;
    Mode mode_;
    std::uint64_t n_ = 0;
    std::uint64_t chunks_created_ = 0;
    std::uint64_t base_chunks_ = 0;
    std::uint64_t queries_ = 0;
    std::uint64_t parent_comparisons_ = 0;
    std::uint64_t insert_probes_ = 0;
    std::uint64_t inserts_ = 0;
    std::vector<std::unique_ptr<ElementRecord>> graveyard_;
};

} // namespace lst

#endif
