#include <algorithm>
#include <random>

#include "workload.hpp"

namespace wl {

namespace {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    std::uint64_t below(std::uint64_t n) { // uniform on {0..n-1}
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x;
        do {
            x = g();
        } while (x > limit);
        return x % n;
    }
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
    std::int64_t key() {
        return static_cast<std::int64_t>(below(std::uint64_t{1} << 41)) -
               (std::int64_t{1} << 40);
    }
};

std::uint64_t get_u64(const Params& p, const std::string& k, std::uint64_t dflt) {
    auto it = p.find(k);
    if (it == p.end()) return dflt;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw std::runtime_error("bad value for param '" + k + "'");
    }
}

// a compact mutable min-heap so generated pop/decrease targets stay valid
struct SimHeap {
    struct Item {
        std::int64_t key;
        std::uint64_t idx;
    };
    std::vector<Item> v;

    void up(std::size_t i) {
        while (i > 0) {
            std::size_t p = (i - 1) / 2;
            if (v[p].key <= v[i].key) break;
            std::swap(v[p], v[i]);
            i = p;
        }
    }
    void down(std::size_t i) {
        while (true) {
            std::size_t l = 2 * i + 1, r = l + 1, m = i;
            if (l < v.size() && v[l].key < v[m].key) m = l;
            if (r < v.size() && v[r].key < v[m].key) m = r;
            if (m == i) break;
            std::swap(v[m], v[i]);
            i = m;
        }
    }
    void push(std::int64_t key, std::uint64_t idx) {
        v.push_back({key, idx});
        up(v.size() - 1);
    }
    Item pop() {
        Item out = v.front();
        v.front() = v.back();
        v.pop_back();
        if (!v.empty()) down(0);
        return out;
    }
};

Script gen_uniform(std::uint64_t n, std::uint64_t q, Rng& rng) {
    Script s;
    std::vector<std::uint64_t> at;
    for (std::uint64_t i = 0; i < q; ++i) at.push_back(1 + rng.below(n));
    std::sort(at.begin(), at.end());
    std::size_t next = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        s.ops.push_back({OpKind::Insert, rng.key()});
        while (next < at.size() && at[next] == i) {
            Op op{OpKind::Select};
            op.rank = 1 + rng.below(i);
            s.ops.push_back(op);
            ++next;
        }
    }
    return s;
}

Script gen_clustered(std::uint64_t n, std::uint64_t q, std::uint64_t k, Rng& rng) {
    Script s;
    for (std::uint64_t i = 0; i < n; ++i) s.ops.push_back({OpKind::Insert, rng.key()});
    std::uint64_t batches = q / k;
    for (std::uint64_t b = 0; b < batches; ++b) {
        std::uint64_t start = 1 + rng.below(n);
        for (std::uint64_t j = 0; j < k; ++j) {
            Op op{OpKind::Select};
            op.rank = std::min(start + j, n);
            s.ops.push_back(op);
        }
    }
    return s;
}

Script gen_pq(std::uint64_t n, Rng& rng) {
    Script s;
    SimHeap heap;
    std::vector<std::int64_t> keys(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::int64_t k = rng.key();
        keys[i] = k;
        s.ops.push_back({OpKind::Insert, k});
        heap.push(k, i);
        if (!heap.v.empty() && rng.chance(1, 4)) {
            s.ops.push_back({OpKind::PopMin});
            heap.pop();
        }
        if (!heap.v.empty() && rng.chance(1, 16)) {
            std::size_t slot = rng.below(heap.v.size());
            auto& item = heap.v[slot];
            std::int64_t nk = item.key - 1 - static_cast<std::int64_t>(rng.below(1 << 20));
            Op op{OpKind::ChangeKey, nk};
            op.idx = item.idx;
            s.ops.push_back(op);
            item.key = nk;
            heap.up(slot);
        }
    }
    return s;
}

Script gen_depq(std::uint64_t n, Rng& rng) {
    Script s;
    std::uint64_t live = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        s.ops.push_back({OpKind::Insert, rng.key()});
        ++live;
        if (live > 0 && rng.chance(1, 4)) {
            s.ops.push_back({rng.chance(1, 2) ? OpKind::PopMin : OpKind::PopMax});
            --live;
        }
    }
    return s;
}

Script gen_multiselect(std::uint64_t n, const Params& p, Rng& rng) {
    Script s;
    for (std::uint64_t i = 0; i < n; ++i) s.ops.push_back({OpKind::Insert, rng.key()});
    std::vector<std::uint64_t> ranks;
    auto it = p.find("ranks");
    if (it != p.end()) {
        std::string v = it->second;
        std::size_t pos = 0;
        while (pos < v.size()) {
            std::size_t colon = v.find(':', pos);
            std::string tok = v.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
            if (!tok.empty()) {
                try {
                    ranks.push_back(std::stoull(tok));
                } catch (...) {
                    throw std::runtime_error("bad rank '" + tok + "' in ranks param");
                }
            }
            if (colon == std::string::npos) break;
            pos = colon + 1;
        }
    } else {
        std::uint64_t q = get_u64(p, "q", 8);
        for (std::uint64_t i = 0; i < q; ++i) ranks.push_back(1 + rng.below(n));
    }
    for (std::uint64_t r : ranks) {
        Op op{OpKind::Select};
        op.rank = std::max<std::uint64_t>(1, std::min(r, n));
        s.ops.push_back(op);
    }
    return s;
}

Script gen_splitrank(std::uint64_t n, std::uint64_t splits, Rng& rng) {
    Script s;
    for (std::uint64_t i = 0; i < n; ++i) s.ops.push_back({OpKind::Insert, rng.key()});
    std::map<std::uint64_t, std::uint64_t> sizes;
    sizes[0] = n;
    std::uint64_t cur = 0, next_id = 1;
    for (std::uint64_t i = 0; i < splits; ++i) {
        std::uint64_t sz = sizes[cur];
        if (sz < 2) break;
        std::uint64_t r = 1 + rng.below(sz - 1);
        Op op{OpKind::Split};
        op.rank = r;
        s.ops.push_back(op);
        std::uint64_t a = next_id++, b = next_id++;
        sizes.erase(cur);
        sizes[a] = r;
        sizes[b] = sz - r;
        cur = rng.chance(1, 2) ? a : b;
        if (cur != a) {
            Op use{OpKind::Use};
            use.a = cur;
            s.ops.push_back(use);
        }
    }
    return s;
}

Script gen_incsort(std::uint64_t n, std::uint64_t q, Rng& rng) {
    Script s;
    for (std::uint64_t i = 0; i < n; ++i) s.ops.push_back({OpKind::Insert, rng.key()});
    for (std::uint64_t i = 0; i < std::min(q, n); ++i) s.ops.push_back({OpKind::PopMin});
    return s;
}

} // namespace

Script generate(const std::string& scenario, const Params& params, std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t n = get_u64(params, "n", 1024);
    if (n == 0) throw std::runtime_error("scenario needs n >= 1");
    if (scenario == "uniform") return gen_uniform(n, get_u64(params, "q", 16), rng);
    if (scenario == "clustered") {
        std::uint64_t k = get_u64(params, "k", 8);
        if (k == 0) throw std::runtime_error("clustered needs k >= 1");
        return gen_clustered(n, get_u64(params, "q", 64), k, rng);
    }
    if (scenario == "pq") return gen_pq(n, rng);
    if (scenario == "depq") return gen_depq(n, rng);
    if (scenario == "multiselect") return gen_multiselect(n, params, rng);
    if (scenario == "splitrank") return gen_splitrank(n, get_u64(params, "splits", 8), rng);
    if (scenario == "incsort") return gen_incsort(n, get_u64(params, "q", 64), rng);
    throw std::runtime_error("unknown scenario '" + scenario + "'");
}

} // namespace wl
