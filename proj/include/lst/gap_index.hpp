#ifndef LST_GAP_INDEX_HPP
#define LST_GAP_INDEX_HPP

#include <cstdint>
#include <utility>

#include "lst/structure.hpp"

namespace lst {

struct GapNode {
    GapNode* left = nullptr;
    GapNode* right = nullptr;
    GapNode* parent = nullptr;
    std::uint64_t subtree = 0; // element count of this gap plus both subtrees
    Gap gap;
};

// Splay tree over the gap sequence, ordered left to right. Supports descent
// by key (via gap boundary bounds) and by rank (via subtree element counts).
// Every lookup splays the result so repeated access near a hot boundary is
// cheap.
class GapIndex {
public:
    GapIndex() = default;
    ~GapIndex();
    GapIndex(GapIndex&& o) noexcept;
    GapIndex& operator=(GapIndex&& o) noexcept;
    GapIndex(const GapIndex&) = delete;
    GapIndex& operator=(const GapIndex&) = delete;

    bool empty() const { return root_ == nullptr; }
    std::uint64_t total_size() const { return root_ ? root_->subtree : 0; }
    GapNode* root() const { return root_; }

    GapNode* min_node() const;
    GapNode* max_node() const;
    static GapNode* successor(GapNode* n);
    static GapNode* predecessor(GapNode* n);

    // First gap whose upper bound admits k (k <= hi); falls back to the last
    // gap. Splays the result; *prefix gets the element count of all gaps
    // before it.
    GapNode* find_by_key_lower(const Comparator& cmp, Key k, std::uint64_t* prefix);

    // Last gap whose lower bound admits k (lo <= k); falls back to the first
    // gap. Splays the result.
    GapNode* find_by_key_upper(const Comparator& cmp, Key k, std::uint64_t* prefix);

    // Gap containing global rank r (1-based). Splays the result.
    GapNode* find_by_rank(std::uint64_t r, std::uint64_t* prefix);

    // Adjust the element count of a gap (splays it first).
    void add_size(GapNode* n, std::int64_t delta);

    // Install the sole gap of an empty index.
    GapNode* install_first(Gap&& g);

    // Replace a gap with two adjacent gaps. The old node's gap must already
    // have been stripped of intervals. Returns (left, right) nodes.
    std::pair<GapNode*, GapNode*> replace_with_two(GapNode* n, Gap&& lg, Gap&& rg);

    // Remove an emptied gap.
    void remove(GapNode* n);

    // Detach every gap after n into a new index.
    GapIndex split_after(GapNode* n);

    // Append all gaps of `right` (whose ranks follow ours). Consumes it.
    void join(GapIndex&& right);

    template <typename F>
    void for_each(F&& f) const {
        visit_in_order(root_, f);
    }

    // access statistics, for tests
    std::uint64_t rotations() const { return rotations_; }
    std::uint64_t accesses() const { return accesses_; }
    std::uint64_t total_access_depth() const { return total_depth_; }

    void splay(GapNode* n);

private:
    template <typename F>
    static void visit_in_order(GapNode* n, F&& f) {
        if (!n) return;
        visit_in_order(n->left, f);
        f(n);
        visit_in_order(n->right, f);
    }

    static std::uint64_t sub(const GapNode* n) { return n ? n->subtree : 0; }
    static void pull(GapNode* n) { n->subtree = n->gap.size + sub(n->left) + sub(n->right); }

    void rotate(GapNode* n);
    void note_access(std::uint64_t depth);
    static void destroy(GapNode* n);

    GapNode* root_ = nullptr;
    std::uint64_t rotations_ = 0;
    std::uint64_t accesses_ = 0;
    std::uint64_t total_depth_ = 0;
};

} // namespace lst

#endif
