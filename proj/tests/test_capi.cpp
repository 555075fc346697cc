#include "doctest.h"

#include <string>
#include <vector>

#include "lazy_search_tree.h"

TEST_CASE("C API round trip: insert, query, erase") {
    lst_tree* t = lst_create(LST_MODE_RANDOMIZED_PIVOT, 3);
    REQUIRE(t != nullptr);
    CHECK(lst_size(t) == 0);

    lst_handle h5 = 0, h3 = 0, h8 = 0;
    CHECK(lst_insert(t, 5, 50, &h5) == LST_OK);
    CHECK(lst_insert(t, 3, 30, &h3) == LST_OK);
    CHECK(lst_insert(t, 8, 80, &h8) == LST_OK);
    CHECK(h5 != 0);
    CHECK(lst_size(t) == 3);

    lst_result r{};
    CHECK(lst_query(t, LST_QUERY_SELECT, 0, 2, &r) == LST_OK);
    CHECK(r.has_element);
    CHECK(r.key == 5);
    CHECK(r.value == 50);

    CHECK(lst_query(t, LST_QUERY_RANK, 8, 0, &r) == LST_OK);
    CHECK(r.rank == 3);
    CHECK(lst_query(t, LST_QUERY_CONTAINS, 4, 0, &r) == LST_OK);
    CHECK(!r.contained);
    CHECK(lst_query(t, LST_QUERY_SUCCESSOR, 5, 0, &r) == LST_OK);
    CHECK(r.key == 8);
    CHECK(lst_query(t, LST_QUERY_PREDECESSOR, 5, 0, &r) == LST_OK);
    CHECK(r.key == 3);
    CHECK(lst_query(t, LST_QUERY_MINIMUM, 0, 0, &r) == LST_OK);
    CHECK(r.key == 3);
    CHECK(lst_query(t, LST_QUERY_MAXIMUM, 0, 0, &r) == LST_OK);
    CHECK(r.key == 8);

    lst_key k = 0;
    uint64_t v = 0;
    CHECK(lst_erase(t, h5, &k, &v) == LST_OK);
    CHECK(k == 5);
    CHECK(v == 50);
    CHECK(lst_size(t) == 2);
    CHECK(lst_erase(t, h5, &k, &v) == LST_ERR_STALE_HANDLE);
    CHECK(lst_change_key(t, h5, 1) == LST_ERR_STALE_HANDLE);

    CHECK(lst_change_key(t, h3, 100) == LST_OK);
    CHECK(lst_query(t, LST_QUERY_MAXIMUM, 0, 0, &r) == LST_OK);
    CHECK(r.key == 100);

    lst_destroy(t);
}

TEST_CASE("C API error codes") {
    lst_tree* t = lst_create(LST_MODE_EXACT_MEDIAN, 0);
    lst_result r{};
    CHECK(lst_query(t, LST_QUERY_SELECT, 0, 1, &r) == LST_ERR_RANK_OUT_OF_RANGE);
    CHECK(lst_query(t, LST_QUERY_MINIMUM, 0, 0, &r) == LST_ERR_EMPTY_TREE);

    lst_handle h = 0;
    CHECK(lst_insert(t, 1, 0, &h) == LST_OK);
    CHECK(lst_query(t, LST_QUERY_SELECT, 0, 2, &r) == LST_ERR_RANK_OUT_OF_RANGE);

    lst_tree* upper = nullptr;
    CHECK(lst_split(t, 5, &upper) == LST_ERR_RANK_OUT_OF_RANGE);
    CHECK(upper == nullptr);

    // foreign handle
    lst_tree* t2 = lst_create(LST_MODE_EXACT_MEDIAN, 0);
    lst_handle h2 = 0;
    CHECK(lst_insert(t2, 9, 0, &h2) == LST_OK);
    lst_key k;
    uint64_t v;
    CHECK(lst_erase(t, h2, &k, &v) == LST_ERR_HANDLE_NOT_IN_TREE);

    lst_destroy(t);
    lst_destroy(t2);
}

TEST_CASE("construct is comparison-free and split/merge manage ownership") {
    std::vector<lst_key> keys = {9, 1, 5, 3, 7, 2, 8, 4, 6, 0};
    lst_tree* t = lst_construct(keys.data(), nullptr, keys.size(), LST_MODE_RANDOMIZED_PIVOT, 1);
    REQUIRE(t != nullptr);
    CHECK(lst_size(t) == 10);

    lst_tree_stats st{};
    CHECK(lst_get_stats(t, &st) == LST_OK);
    CHECK(st.comparisons == 0);
    CHECK(st.gaps == 1);
    CHECK(st.intervals == 1);

    lst_result r{};
    CHECK(lst_query(t, LST_QUERY_SELECT, 0, 4, &r) == LST_OK);
    CHECK(r.key == 3);
    CHECK(r.value == 3); // NULL values default to the index

    lst_tree* upper = nullptr;
    CHECK(lst_split(t, 4, &upper) == LST_OK);
    REQUIRE(upper != nullptr);
    CHECK(lst_size(t) == 4);
    CHECK(lst_size(upper) == 6);

    // comparison counters restart; parents' totals persist
    CHECK(lst_comparison_count(t) >= 0u);
    lst_tree_stats stl{}, stu{};
    CHECK(lst_get_stats(t, &stl) == LST_OK);
    CHECK(lst_get_stats(upper, &stu) == LST_OK);
    CHECK(stl.comparisons == 0);
    CHECK(stu.comparisons == 0);
    CHECK(stl.parent_comparisons == stu.parent_comparisons);
    CHECK(lst_comparison_count(t) == stl.comparisons + stl.parent_comparisons);

    CHECK(lst_merge(t, upper) == LST_OK); // consumes upper
    CHECK(lst_size(t) == 10);

    char msg[256] = {0};
    CHECK(lst_check(t, msg, sizeof msg) == LST_OK);
    CHECK(lst_interval_budget_violations(t) == 0);
    lst_destroy(t);
}

TEST_CASE("merge order violation leaves both trees alive") {
    lst_key a[] = {10, 20};
    lst_key b[] = {5, 30};
    lst_tree* low = lst_construct(a, nullptr, 2, LST_MODE_RANDOMIZED_PIVOT, 1);
    lst_tree* high = lst_construct(b, nullptr, 2, LST_MODE_RANDOMIZED_PIVOT, 1);
    lst_result r{};
    lst_query(low, LST_QUERY_MAXIMUM, 0, 0, &r);
    lst_query(high, LST_QUERY_MINIMUM, 0, 0, &r);
    CHECK(lst_merge(low, high) == LST_ERR_ORDER_VIOLATION);
    CHECK(lst_size(low) == 2);
    CHECK(lst_size(high) == 2); // caller still owns it after a failed merge
    lst_destroy(low);
    lst_destroy(high);
}

TEST_CASE("oracle C API mirrors the tree conventions") {
    lst_oracle* o = lst_oracle_create();
    CHECK(lst_oracle_insert(o, 5, 50, 1) == LST_OK);
    CHECK(lst_oracle_insert(o, 3, 30, 2) == LST_OK);
    CHECK(lst_oracle_insert(o, 8, 80, 3) == LST_OK);
    CHECK(lst_oracle_size(o) == 3);

    lst_result r{};
    CHECK(lst_oracle_query(o, LST_QUERY_SELECT, 0, 2, &r) == LST_OK);
    CHECK(r.key == 5);
    CHECK(r.handle == 1); // oracle handles are the caller-chosen ids

    lst_key k;
    uint64_t v;
    CHECK(lst_oracle_erase(o, 2, &k, &v) == LST_OK);
    CHECK(k == 3);
    CHECK(lst_oracle_erase(o, 2, &k, &v) == LST_ERR_STALE_HANDLE);

    lst_oracle* up = nullptr;
    CHECK(lst_oracle_split(o, 1, &up) == LST_OK);
    CHECK(lst_oracle_size(o) == 1);
    CHECK(lst_oracle_size(up) == 1);
    CHECK(lst_oracle_merge(o, up) == LST_OK);
    CHECK(lst_oracle_size(o) == 2);
    lst_oracle_destroy(o);
}

TEST_CASE("bound helpers validate their partitions") {
    uint64_t sizes_ok[] = {4, 4, 4, 4};
    double b = 0;
    CHECK(lst_compute_b(sizes_ok, 4, 16, &b) == LST_OK);
    CHECK(b == doctest::Approx(32.0));

    uint64_t sizes_bad[] = {4, 0};
    CHECK(lst_compute_b(sizes_bad, 2, 4, &b) == LST_ERR_INVALID_PARTITION);
    uint64_t sizes_sum[] = {4, 4};
    CHECK(lst_compute_b(sizes_sum, 2, 16, &b) == LST_ERR_INVALID_PARTITION);

    uint64_t ranks[] = {4, 8, 12};
    CHECK(lst_multiselect_bound(16, ranks, 3) == doctest::Approx(32.0));
}
