#include "lst/gap_index.hpp"

#include <vector>

namespace lst {

GapIndex::~GapIndex() { destroy(root_); }

void GapIndex::destroy(GapNode* n) {
    // iterative: gap chains can be long under adversarial workloads
    std::vector<GapNode*> stack;
    if (n) stack.push_back(n);
    while (!stack.empty()) {
        GapNode* cur = stack.back();
        stack.pop_back();
        if (cur->left) stack.push_back(cur->left);
        if (cur->right) stack.push_back(cur->right);
        delete cur;
    }
}

GapIndex::GapIndex(GapIndex&& o) noexcept
    : root_(o.root_), rotations_(o.rotations_), accesses_(o.accesses_), total_depth_(o.total_depth_) {
    o.root_ = nullptr;
}

GapIndex& GapIndex::operator=(GapIndex&& o) noexcept {
    if (this != &o) {
        destroy(root_);
        root_ = o.root_;
        rotations_ = o.rotations_;
        accesses_ = o.accesses_;
        total_depth_ = o.total_depth_;
        o.root_ = nullptr;
    }
    return *this;
}

GapNode* GapIndex::min_node() const {
    GapNode* n = root_;
    while (n && n->left) n = n->left;
    return n;
}

GapNode* GapIndex::max_node() const {
    GapNode* n = root_;
    while (n && n->right) n = n->right;
    return n;
}

GapNode* GapIndex::successor(GapNode* n) {
    if (n->right) {
        n = n->right;
        while (n->left) n = n->left;
        return n;
    }
    while (n->parent && n->parent->right == n) n = n->parent;
    return n->parent;
}

GapNode* GapIndex::predecessor(GapNode* n) {
    if (n->left) {
        n = n->left;
        while (n->right) n = n->right;
        return n;
    }
    while (n->parent && n->parent->left == n) n = n->parent;
    return n->parent;
}

void GapIndex::rotate(GapNode* n) {
    GapNode* p = n->parent;
    GapNode* g = p->parent;
    if (p->left == n) {
        p->left = n->right;
        if (n->right) n->right->parent = p;
        n->right = p;
    } else {
        p->right = n->left;
        if (n->left) n->left->parent = p;
        n->left = p;
    }
    p->parent = n;
    n->parent = g;
    if (g) {
        if (g->left == p) g->left = n;
        else g->right = n;
    } else {
        root_ = n;
    }
    pull(p);
    pull(n);
    ++rotations_;
}

void GapIndex::splay(GapNode* n) {
    while (n->parent) {
        GapNode* p = n->parent;
        GapNode* g = p->parent;
        if (g) {
            if ((g->left == p) == (p->left == n)) rotate(p); // zig-zig
            else rotate(n);                                  // zig-zag
        }
        rotate(n);
    }
}

void GapIndex::note_access(std::uint64_t depth) {
    ++accesses_;
    total_depth_ += depth;
}

GapNode* GapIndex::find_by_key_lower(const Comparator& cmp, Key k, std::uint64_t* prefix) {
    GapNode* cur = root_;
    GapNode* cand = nullptr;
    std::uint64_t depth = 0;
    while (cur) {
        ++depth;
        if (le_bound(cmp, k, cur->gap.hi)) {
            cand = cur;
            cur = cur->left;
        } else {
            cur = cur->right;
        }
    }
    if (!cand) cand = max_node(); // k above every recorded bound
    note_access(depth);
    splay(cand);
    *prefix = sub(cand->left);
    return cand;
}

GapNode* GapIndex::find_by_key_upper(const Comparator& cmp, Key k, std::uint64_t* prefix) {
    GapNode* cur = root_;
    GapNode* cand = nullptr;
    std::uint64_t depth = 0;
    while (cur) {
        ++depth;
        if (bound_le(cmp, cur->gap.lo, k)) {
            cand = cur;
            cur = cur->right;
        } else {
            cur = cur->left;
        }
    }
    if (!cand) cand = min_node();
    note_access(depth);
    splay(cand);
    *prefix = sub(cand->left);
    return cand;
}

GapNode* GapIndex::find_by_rank(std::uint64_t r, std::uint64_t* prefix) {
    GapNode* cur = root_;
    std::uint64_t depth = 0;
    while (cur) {
        ++depth;
        std::uint64_t left = sub(cur->left);
        if (r <= left) {
            cur = cur->left;
        } else if (r <= left + cur->gap.size) {
            break;
        } else {
            r -= left + cur->gap.size;
            cur = cur->right;
        }
    }
    note_access(depth);
    splay(cur);
    *prefix = sub(cur->left);
    return cur;
}

void GapIndex::add_size(GapNode* n, std::int64_t delta) {
    splay(n);
    n->gap.size = static_cast<std::uint64_t>(static_cast<std::int64_t>(n->gap.size) + delta);
    pull(n);
}

GapNode* GapIndex::install_first(Gap&& g) {
    GapNode* n = new GapNode;
    n->gap = std::move(g);
    n->gap.node = n;
    for (auto& iv : n->gap.intervals) iv->gap = &n->gap;
    pull(n);
    root_ = n;
    return n;
}

std::pair<GapNode*, GapNode*> GapIndex::replace_with_two(GapNode* n, Gap&& lg, Gap&& rg) {
    splay(n);
    GapNode* ln = new GapNode;
    GapNode* rn = new GapNode;
    ln->gap = std::move(lg);
    rn->gap = std::move(rg);
    ln->gap.node = ln;
    rn->gap.node = rn;
    for (auto& iv : ln->gap.intervals) iv->gap = &ln->gap;
    for (auto& iv : rn->gap.intervals) iv->gap = &rn->gap;

    rn->right = n->right;
    if (rn->right) rn->right->parent = rn;
    rn->parent = ln;
    ln->right = rn;
    ln->left = n->left;
    if (ln->left) ln->left->parent = ln;
    pull(rn);
    pull(ln);
    root_ = ln;

    n->left = n->right = n->parent = nullptr;
    delete n;
    return {ln, rn};
}

void GapIndex::remove(GapNode* n) {
    splay(n);
    GapNode* l = n->left;
    GapNode* r = n->right;
    if (l) l->parent = nullptr;
    if (r) r->parent = nullptr;
    n->left = n->right = nullptr;
    delete n;
    if (!l) {
        root_ = r;
        return;
    }
    root_ = l;
    GapNode* m = max_node();
    splay(m);
    m->right = r;
    if (r) r->parent = m;
    pull(m);
}

GapIndex GapIndex::split_after(GapNode* n) {
    splay(n);
    GapIndex out;
    out.root_ = n->right;
    if (out.root_) {
        out.root_->parent = nullptr;
        n->right = nullptr;
        pull(n);
    }
    return out;
}

void GapIndex::join(GapIndex&& right) {
    if (!right.root_) return;
    if (!root_) {
        root_ = right.root_;
        right.root_ = nullptr;
        return;
    }
    GapNode* m = max_node();
    splay(m);
    m->right = right.root_;
    right.root_->parent = m;
    pull(m);
    right.root_ = nullptr;
}

} // namespace lst
