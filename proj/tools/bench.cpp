#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "workload.hpp"

namespace wl {

namespace {

using Clock = std::chrono::steady_clock;

// ---- counting sorted-map baseline (std::multiset keyed by (key, idx)) ----

struct SmItem {
    std::int64_t key;
    std::uint64_t idx;
};

struct SmCmp {
    std::uint64_t* c;
    bool operator()(const SmItem& a, const SmItem& b) const {
        ++*c;
        if (a.key != b.key) return a.key < b.key;
        return a.idx < b.idx;
    }
};

struct SortedMapBase {
    std::uint64_t cmps = 0;
    std::multiset<SmItem, SmCmp> set;
    std::map<std::uint64_t, std::multiset<SmItem, SmCmp>::iterator> by_idx;
    std::uint64_t next_idx = 0;

    SortedMapBase() : set(SmCmp{&cmps}) {}

    void apply(const Op& op) {
        switch (op.kind) {
            case OpKind::Insert: {
                auto it = set.insert({op.key, next_idx});
                by_idx[next_idx++] = it;
                break;
            }
            case OpKind::Select: {
                if (op.rank >= 1 && op.rank <= set.size()) {
                    auto it = set.begin();
                    std::advance(it, static_cast<std::ptrdiff_t>(op.rank - 1));
                    (void)*it;
                }
                break;
            }
            case OpKind::Rank:
            case OpKind::Contains:
            case OpKind::Pred:
                (void)set.lower_bound({op.key, 0});
                break;
            case OpKind::Succ:
                (void)set.upper_bound({op.key, ~std::uint64_t{0}});
                break;
            case OpKind::Min:
            case OpKind::Max:
                break;
            case OpKind::PopMin:
                if (!set.empty()) {
                    by_idx.erase(set.begin()->idx);
                    set.erase(set.begin());
                }
                break;
            case OpKind::PopMax:
                if (!set.empty()) {
                    auto it = std::prev(set.end());
                    by_idx.erase(it->idx);
                    set.erase(it);
                }
                break;
            case OpKind::Delete: {
                auto it = by_idx.find(op.idx);
                if (it != by_idx.end()) {
                    set.erase(it->second);
                    by_idx.erase(it);
                }
                break;
            }
            case OpKind::ChangeKey: {
                auto it = by_idx.find(op.idx);
                if (it != by_idx.end()) {
                    set.erase(it->second);
                    it->second = set.insert({op.key, op.idx});
                }
                break;
            }
            default: break; // split/merge/use filtered out by the caller
        }
    }
};

// ---- counting binary heap with decrease-key (by insertion index) ----

struct HeapBase {
    std::uint64_t cmps = 0;
    struct E {
        std::int64_t key;
        std::uint64_t idx;
    };
    std::vector<E> v;
    std::map<std::uint64_t, std::size_t> pos;
    std::uint64_t next_idx = 0;
    std::vector<std::int64_t> popped;

    bool less(std::size_t a, std::size_t b) {
        ++cmps;
        return v[a].key < v[b].key;
    }
    void place(std::size_t i) { pos[v[i].idx] = i; }
    void up(std::size_t i) {
        while (i > 0) {
            std::size_t p = (i - 1) / 2;
            if (!less(i, p)) break;
            std::swap(v[i], v[p]);
            place(i);
            place(p);
            i = p;
        }
    }
    void down(std::size_t i) {
        while (true) {
            std::size_t l = 2 * i + 1, r = l + 1, m = i;
            if (l < v.size() && less(l, m)) m = l;
            if (r < v.size() && less(r, m)) m = r;
            if (m == i) break;
            std::swap(v[i], v[m]);
            place(i);
            place(m);
            i = m;
        }
    }
    void remove_at(std::size_t i) {
        pos.erase(v[i].idx);
        if (i + 1 != v.size()) {
            v[i] = v.back();
            v.pop_back();
            place(i);
            up(i);
            down(i);
        } else {
            v.pop_back();
        }
    }

    void apply(const Op& op) {
        switch (op.kind) {
            case OpKind::Insert:
                v.push_back({op.key, next_idx});
                place(v.size() - 1);
                up(v.size() - 1);
                ++next_idx;
                break;
            case OpKind::Min:
                if (!v.empty()) popped.push_back(v[0].key);
                break;
            case OpKind::PopMin:
                if (!v.empty()) {
                    popped.push_back(v[0].key);
                    remove_at(0);
                }
                break;
            case OpKind::Delete: {
                auto it = pos.find(op.idx);
                if (it != pos.end()) remove_at(it->second);
                break;
            }
            case OpKind::ChangeKey: {
                auto it = pos.find(op.idx);
                if (it != pos.end()) {
                    std::size_t i = it->second;
                    v[i].key = op.key;
                    up(i);
                    down(i);
                }
                break;
            }
            default: break;
        }
    }
};

bool map_compatible(const Script& s) {
    for (const Op& op : s.ops)
        if (op.kind == OpKind::Split || op.kind == OpKind::Merge || op.kind == OpKind::Use)
            return false;
    return true;
}

bool heap_compatible(const Script& s) {
    for (const Op& op : s.ops)
        switch (op.kind) {
            case OpKind::Insert:
            case OpKind::Min:
            case OpKind::PopMin:
            case OpKind::Delete:
            case OpKind::ChangeKey: break;
            default: return false;
        }
    return true;
}

std::uint64_t median(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

} // namespace

BenchReport bench(const BenchOptions& opt) {
    BenchReport rep;
    std::vector<std::uint64_t> grid = opt.grid;
    if (grid.empty()) {
        auto it = opt.params.find("n");
        grid.push_back(it != opt.params.end() ? std::stoull(it->second) : 1024);
    }
    const int reps = opt.repeats > 0 ? opt.repeats : 1;

    for (std::uint64_t n : grid) {
        Params p = opt.params;
        p["n"] = std::to_string(n);

        std::vector<std::uint64_t> lst_c, lst_t, map_c, map_t, heap_c, heap_t;
        bool want_map = true, want_heap = true;
        for (int r = 0; r < reps; ++r) {
            std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(r);
            Script s = generate(opt.scenario, p, seed);
            if (r == 0) {
                want_map = map_compatible(s);
                want_heap = heap_compatible(s);
            }

            RunOptions ro;
            ro.mode = opt.mode;
            ro.seed = seed;
            ro.collect_answers = want_heap;
            RunReport rr = run(s, ro);
            lst_c.push_back(rr.total_comparisons);
            lst_t.push_back(rr.wall_ns);
            if (want_heap) rep.lst_pop_keys = rr.answers;

            if (want_map) {
                SortedMapBase base;
                auto t0 = Clock::now();
                for (const Op& op : s.ops) base.apply(op);
                map_t.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
                        .count()));
                map_c.push_back(base.cmps);
            }
            if (want_heap) {
                HeapBase heap;
                auto t0 = Clock::now();
                for (const Op& op : s.ops) heap.apply(op);
                heap_t.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
                        .count()));
                heap_c.push_back(heap.cmps);
                rep.heap_pop_keys = heap.popped;
            }
        }

        rep.rows.push_back({opt.scenario, n, "lst", median(lst_c), median(lst_t)});
        if (want_map)
            rep.rows.push_back({opt.scenario, n, "sorted_map", median(map_c), median(map_t)});
        if (want_heap)
            rep.rows.push_back({opt.scenario, n, "binary_heap", median(heap_c), median(heap_t)});

        if (want_map && median(lst_t) > 25 * std::max<std::uint64_t>(median(map_t), 1)) {
            std::ostringstream os;
            os << "wall-clock: lst " << median(lst_t) << "ns vs sorted_map " << median(map_t)
               << "ns at n=" << n << " (" << opt.scenario << ")";
            rep.warnings.push_back(os.str());
        }
    }
    return rep;
}

std::string bench_csv(const BenchReport& r) {
    std::ostringstream os;
    os << "scenario,n,impl,comparisons,time_ns\n";
    for (const BenchRow& row : r.rows)
        os << row.scenario << ',' << row.n << ',' << row.impl << ',' << row.comparisons << ','
           << row.time_ns << "\n";
    return os.str();
}

} // namespace wl
