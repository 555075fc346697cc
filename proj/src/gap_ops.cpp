#include "lst/gap_ops.hpp"

#include <algorithm>
#include <cassert>

namespace lst {

LocatedRank locate_for_rank(const Gap& g, std::uint64_t local) {
    for (std::size_t j = 0; j < g.intervals.size(); ++j) {
        std::size_t s = g.intervals[j]->size;
        if (local <= s) return {j, static_cast<std::size_t>(local)};
        local -= s;
    }
    assert(false && "rank outside gap");
    return {0, 0};
}

std::size_t middlemost_anchor(const Gap& g) {
    if (g.first_right == 0) return 0;
    std::size_t a = g.first_right - 1;
    return a < g.intervals.size() ? a : g.intervals.size() - 1;
}

IntervalSlot interval_locate(const Gap& g, const Comparator& cmp, Key k, std::size_t anchor,
                             std::uint64_t* probes) {
    const auto& iv = g.intervals;
    const std::size_t n = iv.size();
    IntervalSlot out;
    if (n <= 1) return out;
    if (anchor >= n) anchor = n - 1;

    // the last admitting probe always lands on the returned index; falses sit
    // strictly below it, the highest one at idx-1 (proving k > lo(idx))
    std::size_t last_true = n, last_false = n;
    bool last_true_eq = false;

    // pred(i): interval i admits k, i.e. k <= hi(i). Monotone in i.
    auto pred = [&](std::size_t i) {
        const Bound& b = iv[i]->hi;
        if (!b.finite()) return b.kind == Bound::Kind::PosInf;
        if (probes) ++*probes;
        int c = cmp.compare(k, b.key);
        if (c <= 0) {
            last_true = i;
            last_true_eq = c == 0;
        } else if (last_false == n || i > last_false) {
            last_false = i;
        }
        return c <= 0;
    };
    auto finish = [&](std::size_t idx) {
        out.idx = idx;
        if (last_true == idx) {
            out.hi_known = true;
            out.hi_eq = last_true_eq;
        }
        out.lo_known = idx > 0 && last_false == idx - 1;
        return out;
    };

    std::size_t lo, hi;
    if (pred(anchor)) {
        if (anchor == 0) return finish(0);
        std::size_t off = 1;
        while (off <= anchor && pred(anchor - off)) off <<= 1;
        hi = anchor - (off >> 1);
        lo = off > anchor ? 0 : anchor - off + 1;
    } else {
        std::size_t off = 1;
        while (anchor + off < n && !pred(anchor + off)) off <<= 1;
        lo = anchor + (off >> 1) + 1;
        // the rightmost interval always admits k for callers that routed here
        hi = anchor + off < n ? anchor + off : n - 1;
        if (lo > hi) return finish(hi);
    }
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (pred(mid)) hi = mid;
        else lo = mid + 1;
    }
    return finish(lo);
}

std::size_t interval_search(const Gap& g, const Comparator& cmp, Key k, std::size_t anchor,
                            std::uint64_t* probes) {
    return interval_locate(g, cmp, k, anchor, probes).idx;
}

std::pair<bool, bool> settle_dups(const Gap& g, const IntervalSlot& s, const Comparator& cmp,
                                  Key k) {
    const Interval& iv = *g.intervals[s.idx];
    bool eq_lo = false, eq_hi = false;
    if (s.hi_known) eq_hi = s.hi_eq;
    else if (iv.hi.finite()) eq_hi = cmp.equal(k, iv.hi.key);
    // the lo proof was against the left neighbor's hi; it transfers to lo(idx)
    // only while the two are still the same key (no hole in between)
    bool lo_proven = s.lo_known;
    if (lo_proven && s.idx > 0) {
        const Bound& ph = g.intervals[s.idx - 1]->hi;
        lo_proven = ph.finite() && iv.lo.finite() && ph.key.raw() == iv.lo.key.raw();
    }
    if (!lo_proven && iv.lo.finite()) eq_lo = cmp.equal(k, iv.lo.key);
    return {eq_lo, eq_hi};
}

void stretch_interval_for(Gap& g, std::size_t idx, Key k) {
    Interval& iv = *g.intervals[idx];
    if (iv.lo.finite() && k.raw() < iv.lo.key.raw()) {
        // new bound sits strictly below every element here, so no duplicates
        iv.lo = idx > 0 ? g.intervals[idx - 1]->hi : g.lo;
        iv.dup_lo = 0;
    }
    if (iv.hi.finite() && k.raw() > iv.hi.key.raw()) {
        iv.hi = idx + 1 < g.intervals.size() ? g.intervals[idx + 1]->lo : g.hi;
        iv.dup_hi = 0;
    }
}

namespace {

OwnerCell* interval_cell(Interval& iv) {
    if (iv.cells.empty()) return iv.fresh_cell();
    return cell_root(iv.cells.front().get());
}

} // namespace

ElementRecord* interval_append(Interval& iv, Key k, std::uint64_t value, bool eq_lo, bool eq_hi) {
    auto* e = new ElementRecord;
    e->key = k;
    e->value = value;
    e->owner = interval_cell(iv);
    iv.tail_chunk()->push(e);
    if (eq_lo) ++iv.dup_lo;
    if (eq_hi) ++iv.dup_hi;
    ++iv.size;
    return e;
}

void interval_adopt(Interval& iv, ElementRecord* e, bool eq_lo, bool eq_hi) {
    e->owner = interval_cell(iv);
    iv.tail_chunk()->push(e);
    if (eq_lo) ++iv.dup_lo;
    if (eq_hi) ++iv.dup_hi;
    ++iv.size;
}

void interval_detach(ElementRecord* e) {
    Interval* I = interval_of(e);
    // raw checks: the element's relation to its bounds was settled (and paid
    // for) when it entered the interval
    if (I->lo.finite() && e->key.raw() == I->lo.key.raw()) --I->dup_lo;
    if (I->hi.finite() && e->key.raw() == I->hi.key.raw()) --I->dup_hi;
    e->chunk->erase_slot(e->slot);
    e->chunk = nullptr;
    --I->size;
}

namespace {

ElementRecord* scan_for_equal(const Interval& I, const Comparator& cmp, Key k) {
    for (const auto& ch : I.chunks)
        for (ElementRecord* e : ch->items)
            if (cmp.equal(e->key, k)) return e;
    return nullptr;
}

} // namespace

GapCount gap_count_less_eq(const Gap& g, const Comparator& cmp, Key k, bool need_witness) {
    GapCount out;
    const Interval* dup_iv = nullptr;
    for (const auto& up : g.intervals) {
        const Interval& I = *up;
        if (I.size == 0) continue;
        if (I.hi.finite()) {
            int ch = cmp.compare(k, I.hi.key);
            if (ch > 0) { // everything here < k
                out.less += I.size;
                continue;
            }
            if (ch == 0) {
                out.less += I.size - I.dup_hi;
                out.eq += I.dup_hi;
                if (I.dup_hi && !dup_iv) dup_iv = &I;
                continue;
            }
        }
        // hi > k; settle against lo
        if (I.lo.finite()) {
            int cl = cmp.compare(k, I.lo.key);
            if (cl < 0) break; // this and later intervals are entirely > k
            if (cl == 0) {
                out.eq += I.dup_lo;
                if (I.dup_lo && !dup_iv) dup_iv = &I;
                break;
            }
        }
        // the single strict straddler: lo < k < hi
        for (const auto& chk : I.chunks) {
            for (ElementRecord* e : chk->items) {
                int c = cmp.compare(e->key, k);
                if (c < 0) ++out.less;
                else if (c == 0) {
                    ++out.eq;
                    if (!out.witness) out.witness = e;
                }
            }
        }
        break;
    }
    if (need_witness && !out.witness && dup_iv)
        out.witness = scan_for_equal(*dup_iv, cmp, k);
    return out;
}

std::uint64_t gap_count_le(const Gap& g, const Comparator& cmp, Key k) {
    std::uint64_t le = 0;
    for (const auto& up : g.intervals) {
        const Interval& I = *up;
        if (I.size == 0) continue;
        if (I.hi.finite() && cmp.compare(k, I.hi.key) >= 0) {
            le += I.size;
            continue;
        }
        // hi > k
        if (I.lo.finite()) {
            int cl = cmp.compare(k, I.lo.key);
            if (cl < 0) break;
            if (cl == 0) {
                le += I.dup_lo;
                break;
            }
        }
        for (const auto& chk : I.chunks)
            for (ElementRecord* e : chk->items)
                if (cmp.less_eq(e->key, k)) ++le;
        break;
    }
    return le;
}

ElementRecord* gap_min_element(const Gap& g, const Comparator& cmp) {
    for (const auto& up : g.intervals) {
        if (up->size == 0) continue;
        ElementRecord* best = nullptr;
        for (const auto& ch : up->chunks)
            for (ElementRecord* e : ch->items)
                if (!best || cmp.less(e->key, best->key)) best = e;
        return best;
    }
    return nullptr;
}

ElementRecord* gap_max_element(const Gap& g, const Comparator& cmp) {
    for (auto it = g.intervals.rbegin(); it != g.intervals.rend(); ++it) {
        if ((*it)->size == 0) continue;
        ElementRecord* best = nullptr;
        for (const auto& ch : (*it)->chunks)
            for (ElementRecord* e : ch->items)
                if (!best || cmp.less(best->key, e->key)) best = e;
        return best;
    }
    return nullptr;
}

std::size_t nonempty_interval_count(const Gap& g) {
    std::size_t c = 0;
    for (const auto& up : g.intervals)
        if (up->size > 0) ++c;
    return c;
}

namespace {

// First right-side directory index under the side rule: an interval leans
// toward its nearer queried boundary, ties lean left.
std::size_t compute_first_right(const Gap& g) {
    const auto& iv = g.intervals;
    const std::size_t n = iv.size();
    if (!g.right_queried) return n;
    if (!g.left_queried) return 0;
    std::uint64_t total = 0;
    for (const auto& up : iv) total += up->size;
    std::uint64_t prefix = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t suffix = total - prefix - iv[j]->size;
        if (prefix > suffix) return j;
        prefix += iv[j]->size;
    }
    return n;
}

// Merge interval `src` into its neighbor `dst` (adjacent indices). O(1)
// element bookkeeping via a cell union; chunks are concatenated.
void merge_into(std::vector<std::unique_ptr<Interval>>& iv, std::size_t src, std::size_t dst) {
    Interval& s = *iv[src];
    Interval& d = *iv[dst];
    OwnerCell* sroot = cell_root(s.cells.front().get());
    OwnerCell* droot = cell_root(d.cells.front().get());
    sroot->parent = droot;
    sroot->interval = nullptr;
    for (auto& c : s.cells) d.cells.push_back(std::move(c));
    s.cells.clear();
    for (auto& ch : s.chunks) d.chunks.push_back(std::move(ch));
    s.chunks.clear();
    d.size += s.size;
    if (src < dst) {
        d.lo = s.lo;
        d.dup_lo = s.dup_lo;
    } else {
        d.hi = s.hi;
        d.dup_hi = s.dup_hi;
    }
    iv.erase(iv.begin() + static_cast<std::ptrdiff_t>(src));
}

} // namespace

void apply_rule_b(Gap& g) {
    auto& iv = g.intervals;
    iv.erase(std::remove_if(iv.begin(), iv.end(),
                            [](const std::unique_ptr<Interval>& p) { return p->size == 0; }),
             iv.end());

    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t fr = compute_first_right(g);
        const std::size_t n = iv.size();

        // left side: an interval dominated by what lies left of it folds into
        // its right neighbor (the last left-side interval is exempt)
        std::uint64_t prefix = 0;
        for (std::size_t j = 0; j + 1 < fr; ++j) {
            if (prefix >= iv[j]->size + iv[j + 1]->size) {
                merge_into(iv, j, j + 1);
                changed = true;
                break;
            }
            prefix += iv[j]->size;
        }
        if (changed) continue;

        // right side, reflected
        std::uint64_t suffix = 0;
        for (std::size_t j = n; j-- > 0 && j > fr;) {
            if (suffix >= iv[j]->size + iv[j - 1]->size) {
                merge_into(iv, j, j - 1);
                changed = true;
                break;
            }
            suffix += iv[j]->size;
        }
    }

    const std::size_t fr = compute_first_right(g);
    g.first_right = fr;
    for (std::size_t j = 0; j < iv.size(); ++j) {
        iv[j]->side = j < fr ? Side::Left : Side::Right;
        iv[j]->pos = j;
    }
}

namespace {

std::unique_ptr<Interval> build_piece(ElementRecord* const* v, std::size_t a, std::size_t b,
                                      Bound lo, Bound hi, std::uint64_t& chunks_created) {
    auto p = std::make_unique<Interval>();
    p->lo = lo;
    p->hi = hi;
    auto ch = std::make_unique<Chunk>();
    std::size_t len = b - a;
    ch->items.reserve(len < 8 ? 8 : len);
    OwnerCell* cell = p->fresh_cell();
    for (std::size_t i = a; i < b; ++i) {
        v[i]->owner = cell;
        ch->push(v[i]);
    }
    p->size = len;
    p->chunks.push_back(std::move(ch));
    ++chunks_created;

    // raw recount: every element was 3-way compared against the cut keys by
    // the partition passes, so this is bookkeeping, not new order information
    if (lo.finite() && hi.finite() && lo.key.raw() == hi.key.raw()) {
        p->dup_lo = p->dup_hi = len;
    } else {
        for (std::size_t i = a; i < b; ++i) {
            if (lo.finite() && v[i]->key.raw() == lo.key.raw()) ++p->dup_lo;
            else if (hi.finite() && v[i]->key.raw() == hi.key.raw()) ++p->dup_hi;
        }
    }
    return p;
}

} // namespace

IntervalSplit split_interval(Interval& I, std::size_t inner, bool max_convention, Mode mode,
                             const Comparator& cmp, Rng& rng, std::uint64_t& chunks_created) {
    std::vector<ElementRecord*> v;
    v.reserve(I.size);
    for (auto& ch : I.chunks) {
        for (ElementRecord* e : ch->items) v.push_back(e);
        ch->items.clear();
    }
    I.size = 0;

    const std::size_t len = v.size();
    const std::size_t pos = inner - 1;
    select_nth(v.data(), len, pos, cmp, rng);
    ElementRecord* answer = v[pos];
    const std::size_t splitpt = max_convention ? pos : pos + 1;

    struct Cut {
        std::size_t at;
        Key key;
    };
    std::vector<Cut> cuts;
    cuts.reserve(5);
    if (splitpt > 0 && splitpt < len) cuts.push_back({splitpt, answer->key});

    // left of the cut: halve twice, larger half outward
    const std::size_t nl = splitpt;
    if (nl >= 2) {
        if (mode == Mode::ExactMedian) {
            std::size_t c1 = (nl + 1) / 2;
            select_nth(v.data(), nl, c1 - 1, cmp, rng);
            cuts.push_back({c1, v[c1 - 1]->key});
            std::size_t m = nl - c1;
            if (m >= 2) {
                std::size_t c2 = (m + 1) / 2;
                select_nth(v.data() + c1, m, c2 - 1, cmp, rng);
                cuts.push_back({c1 + c2, v[c1 + c2 - 1]->key});
            }
        } else {
            SplitCut s1 = split_random(v.data(), nl, cmp, rng);
            if (s1.cut > 0) cuts.push_back({s1.cut, s1.key});
            std::size_t m = nl - s1.cut;
            if (m >= 2) {
                SplitCut s2 = split_random(v.data() + s1.cut, m, cmp, rng);
                if (s2.cut > 0) cuts.push_back({s1.cut + s2.cut, s2.key});
            }
        }
    }

    // right of the cut, reflected
    const std::size_t nr = len - splitpt;
    if (nr >= 2) {
        if (mode == Mode::ExactMedian) {
            std::size_t outer = (nr + 1) / 2;
            std::size_t m = nr - outer;
            select_nth(v.data() + splitpt, nr, m - 1, cmp, rng);
            cuts.push_back({splitpt + m, v[splitpt + m - 1]->key});
            if (m >= 2) {
                std::size_t p1 = m - (m + 1) / 2;
                select_nth(v.data() + splitpt, m, p1 - 1, cmp, rng);
                cuts.push_back({splitpt + p1, v[splitpt + p1 - 1]->key});
            }
        } else {
            SplitCut s1 = split_random(v.data() + splitpt, nr, cmp, rng);
            if (s1.cut > 0) cuts.push_back({splitpt + s1.cut, s1.key});
            if (s1.cut >= 2) {
                SplitCut s2 = split_random(v.data() + splitpt, s1.cut, cmp, rng);
                if (s2.cut > 0) cuts.push_back({splitpt + s2.cut, s2.key});
            }
        }
    }

    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.at < b.at; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const Cut& a, const Cut& b) { return a.at == b.at; }),
               cuts.end());

    IntervalSplit out;
    out.answer = answer;
    out.boundary = answer->key;

    std::size_t a = 0;
    Bound lo = I.lo;
    for (std::size_t c = 0; c <= cuts.size(); ++c) {
        std::size_t b = c < cuts.size() ? cuts[c].at : len;
        Bound hi = c < cuts.size() ? Bound::at(cuts[c].key) : I.hi;
        if (b > a) {
            auto piece = build_piece(v.data(), a, b, lo, hi, chunks_created);
            if (b <= splitpt) out.left_pieces.push_back(std::move(piece));
            else out.right_pieces.push_back(std::move(piece));
        }
        a = b;
        lo = hi;
    }
    return out;
}

} // namespace lst
