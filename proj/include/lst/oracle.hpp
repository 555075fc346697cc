#ifndef LST_ORACLE_HPP
#define LST_ORACLE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lst/errors.hpp"
#include "lst/tree.hpp"

namespace lst {

// Reference model: a plain sorted vector with the same operation semantics,
// answer conventions, and error behavior as LazySearchTree. Elements are
// addressed by caller-chosen ids (unique per element).
class OracleDict {
public:
    struct Entry {
        RawKey key;
        std::uint64_t value;
        std::uint64_t id;
    };

    std::uint64_t size() const { return entries_.size(); }

    void insert(RawKey key, std::uint64_t value, std::uint64_t id);
    std::pair<RawKey, std::uint64_t> erase(std::uint64_t id); // StaleHandle if absent
    void change_key(std::uint64_t id, RawKey key);

    // Mirrors LazySearchTree::query, with Entry ids in `handle`.
    QueryResult query(const Query& q) const;

    OracleDict split(std::uint64_t r); // keeps ranks 1..r, returns the rest
    void merge(OracleDict&& upper);    // OrderViolation unless max <= upper.min

    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_; // sorted by (key, id)
    std::size_t find_id(std::uint64_t id) const;
};

// B for an explicit gap partition of n elements: sum of s * log2(n/s).
// InvalidPartition when sizes are empty/zero or do not sum to n.
double compute_B(const std::vector<std::uint64_t>& gap_sizes, std::uint64_t n);

// B induced by a set of query ranks over n elements (boundaries at each
// rank, lower-gap convention). Ranks are clamped to [1, n] and deduplicated.
double multiselect_bound(std::uint64_t n, std::vector<std::uint64_t> ranks);

} // namespace lst

#endif
