#include "lst/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace lst {

double interval_budget(std::uint64_t gap_size) {
    double lg = gap_size > 1 ? std::log2(static_cast<double>(gap_size)) : 1.0;
    return 4.0 * std::max(lg, 1.0);
}

LazySearchTree::LazySearchTree(Mode mode, std::uint64_t seed) : rng_(seed), mode_(mode) {}

void LazySearchTree::ensure_seed_gap() {
    if (!index_.empty()) return;
    Gap g;
    auto iv = std::make_unique<Interval>();
    iv->chunks.push_back(std::make_unique<Chunk>());
    ++base_chunks_;
    g.intervals.push_back(std::move(iv));
    g.first_right = 1;
    index_.install_first(std::move(g));
}

LazySearchTree LazySearchTree::construct(const std::vector<std::pair<RawKey, std::uint64_t>>& items,
                                         Mode mode, std::uint64_t seed) {
    LazySearchTree t(mode, seed);
    t.ensure_seed_gap();
    GapNode* node = t.index_.root();
    Interval& iv = *node->gap.intervals.front();
    for (const auto& [k, v] : items) interval_append(iv, Key{k}, v, false, false);
    t.index_.add_size(node, static_cast<std::int64_t>(items.size()));
    t.n_ = items.size();
    return t;
}

// Route k to the gap that will hold it, widening a recorded edge bound when k
// falls outside every gap's range (possible once splits/merges introduced
// finite outer bounds). Widening checks are raw: the counted descent already
// paid for the information.
GapNode* LazySearchTree::admit_gap(Key k) {
    std::uint64_t prefix;
    GapNode* node = index_.find_by_key_lower(cmp_, k, &prefix);
    Gap& g = node->gap;
    if (g.hi.finite() && k.raw() > g.hi.key.raw()) {
        // beyond the last gap's range; reopen it upward
        g.hi = Bound::pos_inf();
        if (!g.intervals.empty()) {
            Interval& last = *g.intervals.back();
            last.hi = Bound::pos_inf();
            last.dup_hi = 0;
        }
    } else if (g.lo.finite() && k.raw() < g.lo.key.raw()) {
        // below this gap's range yet past its predecessor's: lower the bound
        // to stay contiguous with the neighbor
        GapNode* p = GapIndex::predecessor(node);
        Bound nl = p ? p->gap.hi : Bound::neg_inf();
        g.lo = nl;
        if (!g.intervals.empty()) {
            Interval& first = *g.intervals.front();
            first.lo = nl;
            first.dup_lo = 0;
        }
    }
    return node;
}

Handle LazySearchTree::insert(RawKey raw, std::uint64_t value) {
    ensure_seed_gap();
    Key k{raw};
    GapNode* node = admit_gap(k);
    Gap& g = node->gap;
    IntervalSlot s = interval_locate(g, cmp_, k, middlemost_anchor(g), &insert_probes_);
    stretch_interval_for(g, s.idx, k);
    auto [eq_lo, eq_hi] = settle_dups(g, s, cmp_, k);
    ElementRecord* e = interval_append(*g.intervals[s.idx], k, value, eq_lo, eq_hi);
    index_.add_size(node, 1);
    ++n_;
    ++inserts_;
    return e;
}

void LazySearchTree::validate_handle(Handle h) const {
    if (!h) throw TreeError(Errc::BadArgument, "null handle");
    if (!h->alive) throw TreeError(Errc::StaleHandle, "handle refers to a deleted element");
    GapNode* node = interval_of(h)->gap->node;
    while (node->parent) node = node->parent;
    if (node != index_.root())
        throw TreeError(Errc::HandleNotInTree, "handle belongs to a different tree");
}

std::pair<RawKey, std::uint64_t> LazySearchTree::erase(Handle h) {
    validate_handle(h);
    GapNode* node = interval_of(h)->gap->node;
    interval_detach(h);
    index_.add_size(node, -1);
    --n_;
    h->alive = false;
    graveyard_.emplace_back(h);
    auto out = std::make_pair(h->key.raw(), h->value);
    Gap& g = node->gap;
    if (g.size == 0) {
        index_.remove(node);
    } else if (static_cast<double>(nonempty_interval_count(g)) > interval_budget(g.size)) {
        // deletions can shrink a gap under its interval budget; rebalance
        // eagerly (pure bookkeeping, no comparisons)
        apply_rule_b(g);
    }
    return out;
}

void LazySearchTree::change_key(Handle h, RawKey raw) {
    validate_handle(h);
    Key k{raw};
    Interval* I = interval_of(h);
    GapNode* node = I->gap->node;
    std::size_t from = I->pos;
    interval_detach(h);
    h->key = k;

    Gap& g = node->gap;
    bool in_gap = bound_le(cmp_, g.lo, k) && le_bound(cmp_, k, g.hi);
    if (in_gap) {
        IntervalSlot s = interval_locate(g, cmp_, k, from, nullptr);
        stretch_interval_for(g, s.idx, k);
        auto [eq_lo, eq_hi] = settle_dups(g, s, cmp_, k);
        interval_adopt(*g.intervals[s.idx], h, eq_lo, eq_hi);
        return;
    }

    index_.add_size(node, -1);
    --n_;
    if (g.size == 0) {
        index_.remove(node);
    } else if (static_cast<double>(nonempty_interval_count(g)) > interval_budget(g.size)) {
        apply_rule_b(g);
    }

    ensure_seed_gap();
    GapNode* tn = admit_gap(k);
    IntervalSlot s = interval_locate(tn->gap, cmp_, k, middlemost_anchor(tn->gap), nullptr);
    stretch_interval_for(tn->gap, s.idx, k);
    auto [eq_lo, eq_hi] = settle_dups(tn->gap, s, cmp_, k);
    interval_adopt(*tn->gap.intervals[s.idx], h, eq_lo, eq_hi);
    index_.add_size(tn, 1);
    ++n_;
}

ElementRecord* LazySearchTree::restructure_at(std::uint64_t r, bool max_convention) {
    ++queries_;
    std::uint64_t prefix;
    GapNode* node = index_.find_by_rank(r, &prefix);
    Gap& g = node->gap;
    std::uint64_t local = r - prefix;

    // fast path: the wanted boundary already exists at a gap edge
    if (!max_convention && local == g.size) {
        ElementRecord* ans = gap_max_element(g, cmp_);
        g.right_queried = true;
        apply_rule_b(g);
        if (GapNode* s = GapIndex::successor(node)) {
            s->gap.left_queried = true;
            apply_rule_b(s->gap);
        }
        return ans;
    }
    if (max_convention && local == 1) {
        ElementRecord* ans = gap_min_element(g, cmp_);
        g.left_queried = true;
        apply_rule_b(g);
        if (GapNode* p = GapIndex::predecessor(node)) {
            p->gap.right_queried = true;
            apply_rule_b(p->gap);
        }
        return ans;
    }

    auto [ivx, inner] = locate_for_rank(g, local);
    Interval* I = g.intervals[ivx].get();
    IntervalSplit sp = split_interval(*I, inner, max_convention, mode_, cmp_, rng_, chunks_created_);

    Gap lg, rg;
    lg.lo = g.lo;
    lg.hi = Bound::at(sp.boundary);
    rg.lo = Bound::at(sp.boundary);
    rg.hi = g.hi;
    lg.left_queried = g.left_queried;
    lg.right_queried = true;
    rg.left_queried = true;
    rg.right_queried = g.right_queried;

    for (std::size_t j = 0; j < ivx; ++j) lg.intervals.push_back(std::move(g.intervals[j]));
    for (auto& p : sp.left_pieces) lg.intervals.push_back(std::move(p));
    for (auto& p : sp.right_pieces) rg.intervals.push_back(std::move(p));
    for (std::size_t j = ivx + 1; j < g.intervals.size(); ++j)
        rg.intervals.push_back(std::move(g.intervals[j]));
    g.intervals.clear();

    for (const auto& up : lg.intervals) lg.size += up->size;
    rg.size = g.size - lg.size;
    g.size = 0;

    auto [ln, rn] = index_.replace_with_two(node, std::move(lg), std::move(rg));
    apply_rule_b(ln->gap);
    apply_rule_b(rn->gap);
    return sp.answer;
}

QueryResult LazySearchTree::key_query(QueryOp op, Key k) {
    QueryResult res;
    if (n_ == 0) {
        if (op == QueryOp::Rank) res.rank = 1;
        return res;
    }
    switch (op) {
        case QueryOp::Rank: {
            std::uint64_t prefix;
            GapNode* node = index_.find_by_key_lower(cmp_, k, &prefix);
            GapCount gc = gap_count_less_eq(node->gap, cmp_, k, false);
            std::uint64_t less = prefix + gc.less;
            res.rank = less + 1;
            res.effective_rank = std::min(less + 1, n_);
            restructure_at(res.effective_rank, false);
            return res;
        }
        case QueryOp::Contains: {
            std::uint64_t prefix;
            GapNode* node = index_.find_by_key_lower(cmp_, k, &prefix);
            GapCount gc = gap_count_less_eq(node->gap, cmp_, k, true);
            std::uint64_t less = prefix + gc.less;
            std::uint64_t prefix2;
            GapNode* un = index_.find_by_key_upper(cmp_, k, &prefix2);
            std::uint64_t le = prefix2 + gap_count_le(un->gap, cmp_, k);
            res.contained = le > less;
            res.rank = less + 1;
            ElementRecord* wit = gc.witness;
            if (res.contained && !wit && un != node) {
                // equal keys sit past the first admitting gap (shared
                // boundary == k); walk toward them
                for (GapNode* cur = GapIndex::successor(node); cur;
                     cur = GapIndex::successor(cur)) {
                    GapCount g2 = gap_count_less_eq(cur->gap, cmp_, k, true);
                    if (g2.witness) {
                        wit = g2.witness;
                        break;
                    }
                    if (cur == un) break;
                }
            }
            if (wit) {
                res.has_element = true;
                res.key = wit->key;
                res.value = wit->value;
                res.handle = wit;
            }
            res.effective_rank = std::min(less + 1, n_);
            restructure_at(res.effective_rank, false);
            return res;
        }
        case QueryOp::Successor: {
            std::uint64_t prefix;
            GapNode* un = index_.find_by_key_upper(cmp_, k, &prefix);
            std::uint64_t le = prefix + gap_count_le(un->gap, cmp_, k);
            if (le == n_) {
                res.effective_rank = n_;
                restructure_at(n_, false);
                return res;
            }
            res.effective_rank = le + 1;
            res.rank = le + 1;
            ElementRecord* e = restructure_at(le + 1, false);
            res.has_element = true;
            res.key = e->key;
            res.value = e->value;
            res.handle = e;
            return res;
        }
        case QueryOp::Predecessor: {
            std::uint64_t prefix;
            GapNode* node = index_.find_by_key_lower(cmp_, k, &prefix);
            GapCount gc = gap_count_less_eq(node->gap, cmp_, k, false);
            std::uint64_t less = prefix + gc.less;
            if (less == 0) {
                res.effective_rank = 1;
                restructure_at(1, false);
                return res;
            }
            res.effective_rank = less;
            res.rank = less;
            ElementRecord* e = restructure_at(less, false);
            res.has_element = true;
            res.key = e->key;
            res.value = e->value;
            res.handle = e;
            return res;
        }
        default:
            throw TreeError(Errc::BadArgument, "not a key query");
    }
}

QueryResult LazySearchTree::query(const Query& q) {
    switch (q.op) {
        case QueryOp::Select: {
            if (q.rank < 1 || q.rank > n_)
                throw TreeError(Errc::RankOutOfRange, "select rank outside [1, n]");
            QueryResult res;
            ElementRecord* e = restructure_at(q.rank, false);
            res.has_element = true;
            res.key = e->key;
            res.value = e->value;
            res.handle = e;
            res.rank = q.rank;
            res.effective_rank = q.rank;
            return res;
        }
        case QueryOp::Minimum:
        case QueryOp::Maximum: {
            if (n_ == 0) throw TreeError(Errc::EmptyTree, "extremum of an empty tree");
            bool maxc = q.op == QueryOp::Maximum;
            QueryResult res;
            ElementRecord* e = restructure_at(maxc ? n_ : 1, maxc);
            res.has_element = true;
            res.key = e->key;
            res.value = e->value;
            res.handle = e;
            res.rank = maxc ? n_ : 1;
            res.effective_rank = res.rank;
            return res;
        }
        default:
            return key_query(q.op, q.key);
    }
}

LazySearchTree LazySearchTree::split(std::uint64_t r) {
    if (r > n_) throw TreeError(Errc::RankOutOfRange, "split rank outside [0, n]");
    LazySearchTree up(mode_, rng_());
    if (r == 0) {
        up.index_ = std::move(index_);
        index_ = GapIndex{};
        up.n_ = n_;
        n_ = 0;
    } else if (r < n_) {
        restructure_at(r, false);
        std::uint64_t prefix;
        GapNode* node = index_.find_by_rank(r, &prefix);
        up.index_ = index_.split_after(node);
        up.n_ = n_ - r;
        n_ = r;
    }
    parent_comparisons_ += cmp_.comparisons();
    cmp_.reset();
    up.parent_comparisons_ = parent_comparisons_;
    return up;
}

void LazySearchTree::absorb_counters(LazySearchTree& other) {
    chunks_created_ += other.chunks_created_;
    base_chunks_ += other.base_chunks_;
    queries_ += other.queries_;
    insert_probes_ += other.insert_probes_;
    inserts_ += other.inserts_;
    parent_comparisons_ += other.parent_comparisons_ + other.cmp_.comparisons();
    for (auto& g : other.graveyard_) graveyard_.push_back(std::move(g));
    other.graveyard_.clear();
}

void LazySearchTree::merge(LazySearchTree&& upper) {
    if (upper.n_ > 0) {
        if (n_ == 0) {
            index_ = std::move(upper.index_);
            n_ = upper.n_;
        } else {
            GapNode* a = index_.max_node();
            GapNode* b = upper.index_.min_node();
            bool proven = a->gap.hi.finite() && b->gap.lo.finite() &&
                          cmp_.less_eq(a->gap.hi.key, b->gap.lo.key);
            if (!proven) {
                // recorded bounds are inconclusive: settle the seam exactly
                // by scanning just the two adjoining gaps
                ElementRecord* hi_e = gap_max_element(a->gap, cmp_);
                ElementRecord* lo_e = gap_min_element(b->gap, cmp_);
                if (cmp_.less(lo_e->key, hi_e->key))
                    throw TreeError(Errc::OrderViolation, "merge: key ranges overlap");
                Key kappa = hi_e->key;
                a->gap.hi = Bound::at(kappa);
                if (!b->gap.lo.finite() || cmp_.less(b->gap.lo.key, kappa))
                    b->gap.lo = Bound::at(kappa);
            }
            index_.join(std::move(upper.index_));
            n_ += upper.n_;
        }
    }
    absorb_counters(upper);
    parent_comparisons_ += cmp_.comparisons();
    cmp_.reset();
}

Stats LazySearchTree::stats() const {
    Stats s;
    s.n = n_;
    s.chunks_created = chunks_created_;
    s.base_chunks = base_chunks_;
    s.queries = queries_;
    s.comparisons = cmp_.comparisons();
    s.parent_comparisons = parent_comparisons_;
    s.insert_probes = insert_probes_;
    s.inserts = inserts_;
    index_.for_each([&](const GapNode* node) {
        ++s.gaps;
        s.intervals += nonempty_interval_count(node->gap);
        if (node->gap.size > 0 && n_ > 0) {
            double sz = static_cast<double>(node->gap.size);
            s.bound_b += sz * std::log2(static_cast<double>(n_) / sz);
        }
    });
    return s;
}

std::uint64_t LazySearchTree::interval_budget_violations() const {
    std::uint64_t v = 0;
    index_.for_each([&](const GapNode* node) {
        if (node->gap.size == 0) return;
        if (static_cast<double>(nonempty_interval_count(node->gap)) >
            interval_budget(node->gap.size) + 1e-9)
            ++v;
    });
    return v;
}

namespace {

bool raw_bound_le_key(const Bound& b, RawKey k) {
    if (b.kind == Bound::Kind::NegInf) return true;
    if (b.kind == Bound::Kind::PosInf) return false;
    return b.key.raw() <= k;
}

bool raw_key_le_bound(RawKey k, const Bound& b) {
    if (b.kind == Bound::Kind::PosInf) return true;
    if (b.kind == Bound::Kind::NegInf) return false;
    return k <= b.key.raw();
}

} // namespace

std::string LazySearchTree::check_invariants() const {
    std::ostringstream err;

    std::function<std::uint64_t(const GapNode*)> walk = [&](const GapNode* node) -> std::uint64_t {
        if (!node) return 0;
        std::uint64_t total = node->gap.size + walk(node->left) + walk(node->right);
        if (total != node->subtree) err << "subtree aggregate mismatch; ";
        return total;
    };
    std::uint64_t total = walk(index_.root());
    if (total != n_) err << "element count " << total << " != n " << n_ << "; ";

    const Gap* prev = nullptr;
    index_.for_each([&](const GapNode* node) {
        const Gap& g = node->gap;
        if (node->gap.node != node) err << "gap/node backlink broken; ";
        if (g.size == 0 && n_ > 0) err << "empty gap retained; ";
        if (!bound_raw_le(g.lo, g.hi)) err << "gap bounds inverted; ";
        if (prev && !bound_raw_le(prev->hi, g.lo)) err << "gap boundaries out of order; ";
        prev = &g;

        std::uint64_t gsz = 0;
        const Bound* prev_hi = nullptr;
        for (const auto& up : g.intervals) {
            const Interval& I = *up;
            if (I.gap != &g) err << "interval/gap backlink broken; ";
            if (prev_hi && I.size > 0 && !bound_raw_le(*prev_hi, I.lo))
                err << "interval bounds out of order; ";
            if (I.size > 0) prev_hi = &I.hi;
            gsz += I.size;
            std::size_t chunk_total = 0;
            std::size_t dup_lo = 0, dup_hi = 0;
            for (const auto& ch : I.chunks) {
                chunk_total += ch->items.size();
                for (std::uint32_t s = 0; s < ch->items.size(); ++s) {
                    const ElementRecord* e = ch->items[s];
                    if (!e->alive) err << "dead element in interval; ";
                    if (e->chunk != ch.get() || e->slot != s) err << "chunk backlink broken; ";
                    if (interval_of(const_cast<ElementRecord*>(e)) != &I)
                        err << "owner cell resolves wrong; ";
                    RawKey k = e->key.raw();
                    if (!raw_bound_le_key(I.lo, k) || !raw_key_le_bound(k, I.hi))
                        err << "element outside interval bounds; ";
                    if (I.lo.finite() && k == I.lo.key.raw()) ++dup_lo;
                    if (I.hi.finite() && k == I.hi.key.raw()) ++dup_hi;
                }
            }
            if (chunk_total != I.size) err << "interval size != chunk occupancy; ";
            if (I.lo.finite() && dup_lo != I.dup_lo) err << "dup_lo stale; ";
            if (I.hi.finite() && dup_hi != I.dup_hi) err << "dup_hi stale; ";
        }
        if (gsz != g.size) err << "gap size != interval sizes; ";
    });

    for (const auto& e : graveyard_)
        if (e->alive) err << "live element in graveyard; ";

    return err.str();
}

} // namespace lst
