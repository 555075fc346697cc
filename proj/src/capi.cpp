#include "lazy_search_tree.h"

#include <cstring>
#include <new>

#include "lst/oracle.hpp"
#include "lst/tree.hpp"

struct lst_tree {
    lst::LazySearchTree impl;
};

struct lst_oracle {
    lst::OracleDict impl;
};

namespace {

lst_status to_status(lst::Errc e) {
    switch (e) {
        case lst::Errc::EmptyTree: return LST_ERR_EMPTY_TREE;
        case lst::Errc::RankOutOfRange: return LST_ERR_RANK_OUT_OF_RANGE;
        case lst::Errc::StaleHandle: return LST_ERR_STALE_HANDLE;
        case lst::Errc::HandleNotInTree: return LST_ERR_HANDLE_NOT_IN_TREE;
        case lst::Errc::OrderViolation: return LST_ERR_ORDER_VIOLATION;
        case lst::Errc::InvalidPartition: return LST_ERR_INVALID_PARTITION;
        case lst::Errc::BadArgument: return LST_ERR_BAD_ARGUMENT;
    }
    return LST_ERR_BAD_ARGUMENT;
}

template <typename F>
lst_status guarded(F&& f) {
    try {
        f();
        return LST_OK;
    } catch (const lst::TreeError& e) {
        return to_status(e.code());
    } catch (...) {
        return LST_ERR_BAD_ARGUMENT;
    }
}

lst::Mode to_mode(lst_mode m) {
    return m == LST_MODE_EXACT_MEDIAN ? lst::Mode::ExactMedian : lst::Mode::RandomizedPivot;
}

void fill_result(const lst::QueryResult& r, lst_result* out) {
    out->has_element = r.has_element ? 1 : 0;
    out->key = r.has_element ? r.key.raw() : 0;
    out->value = r.value;
    out->handle = reinterpret_cast<uint64_t>(r.handle);
    out->rank = r.rank;
    out->contained = r.contained ? 1 : 0;
    out->effective_rank = r.effective_rank;
}

lst::Query to_query(lst_query_op op, lst_key key, uint64_t rank) {
    switch (op) {
        case LST_QUERY_RANK: return lst::Query::rank_of(key);
        case LST_QUERY_SELECT: return lst::Query::select(rank);
        case LST_QUERY_CONTAINS: return lst::Query::contains(key);
        case LST_QUERY_SUCCESSOR: return lst::Query::successor(key);
        case LST_QUERY_PREDECESSOR: return lst::Query::predecessor(key);
        case LST_QUERY_MINIMUM: return lst::Query::minimum();
        default: return lst::Query::maximum();
    }
}

} // namespace

extern "C" {

lst_tree* lst_create(lst_mode mode, uint64_t seed) {
    return new (std::nothrow) lst_tree{lst::LazySearchTree(to_mode(mode), seed)};
}

lst_tree* lst_construct(const lst_key* keys, const uint64_t* values, size_t count, lst_mode mode,
                        uint64_t seed) {
    if (count > 0 && !keys) return nullptr;
    std::vector<std::pair<lst::RawKey, uint64_t>> items;
    items.reserve(count);
    for (size_t i = 0; i < count; ++i)
        items.emplace_back(keys[i], values ? values[i] : static_cast<uint64_t>(i));
    return new (std::nothrow)
        lst_tree{lst::LazySearchTree::construct(items, to_mode(mode), seed)};
}

void lst_destroy(lst_tree* t) { delete t; }

uint64_t lst_size(const lst_tree* t) { return t ? t->impl.size() : 0; }

lst_status lst_insert(lst_tree* t, lst_key key, uint64_t value, lst_handle* out) {
    if (!t) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] {
        lst::Handle h = t->impl.insert(key, value);
        if (out) *out = reinterpret_cast<uint64_t>(h);
    });
}

lst_status lst_erase(lst_tree* t, lst_handle h, lst_key* out_key, uint64_t* out_value) {
    if (!t) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] {
        auto [k, v] = t->impl.erase(reinterpret_cast<lst::Handle>(h));
        if (out_key) *out_key = k;
        if (out_value) *out_value = v;
    });
}

lst_status lst_change_key(lst_tree* t, lst_handle h, lst_key new_key) {
    if (!t) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { t->impl.change_key(reinterpret_cast<lst::Handle>(h), new_key); });
}

lst_status lst_query(lst_tree* t, lst_query_op op, lst_key key, uint64_t rank, lst_result* out) {
    if (!t || !out) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { fill_result(t->impl.query(to_query(op, key, rank)), out); });
}

lst_status lst_split(lst_tree* t, uint64_t rank, lst_tree** out_upper) {
    if (!t || !out_upper) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { *out_upper = new lst_tree{t->impl.split(rank)}; });
}

lst_status lst_merge(lst_tree* t, lst_tree* upper) {
    if (!t || !upper || t == upper) return LST_ERR_BAD_ARGUMENT;
    lst_status s = guarded([&] { t->impl.merge(std::move(upper->impl)); });
    if (s == LST_OK) delete upper;
    return s;
}

lst_status lst_get_stats(const lst_tree* t, lst_tree_stats* out) {
    if (!t || !out) return LST_ERR_BAD_ARGUMENT;
    lst::Stats s = t->impl.stats();
    out->n = s.n;
    out->gaps = s.gaps;
    out->intervals = s.intervals;
    out->chunks_created = s.chunks_created;
    out->base_chunks = s.base_chunks;
    out->queries = s.queries;
    out->comparisons = s.comparisons;
    out->parent_comparisons = s.parent_comparisons;
    out->insert_probes = s.insert_probes;
    out->inserts = s.inserts;
    out->bound_b = s.bound_b;
    return LST_OK;
}

uint64_t lst_comparison_count(const lst_tree* t) {
    return t ? t->impl.comparison_count() : 0;
}

lst_status lst_check(const lst_tree* t, char* msg, size_t msg_len) {
    if (!t) return LST_ERR_BAD_ARGUMENT;
    std::string report = t->impl.check_invariants();
    if (report.empty()) return LST_OK;
    if (msg && msg_len > 0) {
        size_t n = report.size() < msg_len - 1 ? report.size() : msg_len - 1;
        std::memcpy(msg, report.data(), n);
        msg[n] = '\0';
    }
    return LST_ERR_INVARIANT;
}

uint64_t lst_interval_budget_violations(const lst_tree* t) {
    return t ? t->impl.interval_budget_violations() : 0;
}

lst_oracle* lst_oracle_create(void) { return new (std::nothrow) lst_oracle{}; }

void lst_oracle_destroy(lst_oracle* o) { delete o; }

uint64_t lst_oracle_size(const lst_oracle* o) { return o ? o->impl.size() : 0; }

lst_status lst_oracle_insert(lst_oracle* o, lst_key key, uint64_t value, uint64_t id) {
    if (!o) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { o->impl.insert(key, value, id); });
}

lst_status lst_oracle_erase(lst_oracle* o, uint64_t id, lst_key* out_key, uint64_t* out_value) {
    if (!o) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] {
        auto [k, v] = o->impl.erase(id);
        if (out_key) *out_key = k;
        if (out_value) *out_value = v;
    });
}

lst_status lst_oracle_change_key(lst_oracle* o, uint64_t id, lst_key new_key) {
    if (!o) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { o->impl.change_key(id, new_key); });
}

lst_status lst_oracle_query(const lst_oracle* o, lst_query_op op, lst_key key, uint64_t rank,
                            lst_result* out) {
    if (!o || !out) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { fill_result(o->impl.query(to_query(op, key, rank)), out); });
}

lst_status lst_oracle_split(lst_oracle* o, uint64_t rank, lst_oracle** out_upper) {
    if (!o || !out_upper) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] { *out_upper = new lst_oracle{o->impl.split(rank)}; });
}

lst_status lst_oracle_merge(lst_oracle* o, lst_oracle* upper) {
    if (!o || !upper || o == upper) return LST_ERR_BAD_ARGUMENT;
    lst_status s = guarded([&] { o->impl.merge(std::move(upper->impl)); });
    if (s == LST_OK) delete upper;
    return s;
}

lst_status lst_compute_b(const uint64_t* gap_sizes, size_t count, uint64_t n, double* out) {
    if (!out || (count > 0 && !gap_sizes)) return LST_ERR_BAD_ARGUMENT;
    return guarded([&] {
        std::vector<uint64_t> sizes(gap_sizes, gap_sizes + count);
        *out = lst::compute_B(sizes, n);
    });
}

double lst_multiselect_bound(uint64_t n, const uint64_t* ranks, size_t count) {
    std::vector<uint64_t> rs(ranks, ranks + count);
    return lst::multiselect_bound(n, rs);
}

} // extern "C"
