#include "doctest.h"

#include <cmath>

#include "lst/oracle.hpp"

using namespace lst;

namespace {

OracleDict dict_of(std::initializer_list<RawKey> keys) {
    OracleDict d;
    std::uint64_t id = 0;
    for (RawKey k : keys) {
        d.insert(k, id, id);
        ++id;
    }
    return d;
}

std::uint64_t id_of(const QueryResult& r) {
    return static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(r.handle));
}

} // namespace

TEST_CASE("select, min, max on a small dictionary") {
    OracleDict d = dict_of({5, 3, 8, 1}); // sorted: 1 3 5 8
    CHECK(d.size() == 4);

    auto r = d.query(Query::select(2));
    CHECK(r.has_element);
    CHECK(r.key.raw() == 3);
    CHECK(r.rank == 2);
    CHECK(r.effective_rank == 2);

    CHECK(d.query(Query::minimum()).key.raw() == 1);
    CHECK(d.query(Query::minimum()).effective_rank == 1);
    CHECK(d.query(Query::maximum()).key.raw() == 8);
    CHECK(d.query(Query::maximum()).effective_rank == 4);

    CHECK_THROWS_AS(d.query(Query::select(0)), TreeError);
    CHECK_THROWS_AS(d.query(Query::select(5)), TreeError);
}

TEST_CASE("rank and contains conventions") {
    OracleDict d = dict_of({5, 3, 8, 1});

    CHECK(d.query(Query::rank_of(0)).rank == 1);
    CHECK(d.query(Query::rank_of(1)).rank == 1);
    CHECK(d.query(Query::rank_of(4)).rank == 3);
    CHECK(d.query(Query::rank_of(8)).rank == 4);
    CHECK(d.query(Query::rank_of(9)).rank == 5); // n + 1
    CHECK(d.query(Query::rank_of(9)).effective_rank == 4); // clamped

    auto c = d.query(Query::contains(5));
    CHECK(c.contained);
    CHECK(c.key.raw() == 5);
    CHECK(!d.query(Query::contains(4)).contained);
    CHECK(!d.query(Query::contains(4)).has_element);
}

TEST_CASE("successor and predecessor are strict") {
    OracleDict d = dict_of({5, 3, 8, 1});

    CHECK(d.query(Query::successor(3)).key.raw() == 5); // strictly greater
    CHECK(d.query(Query::successor(4)).key.raw() == 5);
    CHECK(d.query(Query::successor(0)).key.raw() == 1);
    auto none = d.query(Query::successor(8));
    CHECK(!none.has_element);
    CHECK(none.effective_rank == 4); // still organizes around the top

    CHECK(d.query(Query::predecessor(5)).key.raw() == 3); // strictly smaller
    CHECK(d.query(Query::predecessor(100)).key.raw() == 8);
    auto low = d.query(Query::predecessor(1));
    CHECK(!low.has_element);
    CHECK(low.effective_rank == 1);
}

TEST_CASE("duplicate keys: rank counts strictly-smaller, contains finds a witness") {
    OracleDict d = dict_of({7, 7, 7, 2});
    CHECK(d.query(Query::rank_of(7)).rank == 2);
    CHECK(d.query(Query::contains(7)).contained);
    CHECK(d.query(Query::successor(7)).has_element == false);
    CHECK(d.query(Query::predecessor(7)).key.raw() == 2);
    CHECK(d.query(Query::select(3)).key.raw() == 7);
}

TEST_CASE("empty dictionary behavior") {
    OracleDict d;
    CHECK_THROWS_AS(d.query(Query::select(1)), TreeError);
    CHECK_THROWS_AS(d.query(Query::minimum()), TreeError);
    CHECK_THROWS_AS(d.query(Query::maximum()), TreeError);

    auto r = d.query(Query::rank_of(5));
    CHECK(r.rank == 1);
    CHECK(r.effective_rank == 0);
    CHECK(!d.query(Query::contains(5)).contained);
    CHECK(!d.query(Query::successor(5)).has_element);
    CHECK(!d.query(Query::predecessor(5)).has_element);
}

TEST_CASE("erase and change_key address elements by id") {
    OracleDict d = dict_of({5, 3, 8, 1}); // ids 0..3
    auto out = d.erase(2);                // key 8
    CHECK(out.first == 8);
    CHECK(d.size() == 3);
    CHECK_THROWS_AS(d.erase(2), TreeError); // stale id

    d.change_key(0, -10); // 5 -> -10
    CHECK(d.query(Query::minimum()).key.raw() == -10);
    CHECK(id_of(d.query(Query::minimum())) == 0);
    CHECK_THROWS_AS(d.change_key(9, 0), TreeError);
}

TEST_CASE("split keeps the lower ranks, merge rejects overlap") {
    OracleDict d = dict_of({5, 3, 8, 1, 9}); // sorted: 1 3 5 8 9
    OracleDict up = d.split(2);
    CHECK(d.size() == 2);
    CHECK(up.size() == 3);
    CHECK(d.query(Query::maximum()).key.raw() == 3);
    CHECK(up.query(Query::minimum()).key.raw() == 5);
    CHECK_THROWS_AS(d.split(99), TreeError);

    OracleDict low = dict_of({100});
    CHECK_THROWS_AS(low.merge(std::move(up)), TreeError); // 100 > 5

    OracleDict a = dict_of({1, 2});
    OracleDict b = dict_of({2, 3}); // touching ranges are fine (max == min)
    a.merge(std::move(b));
    CHECK(a.size() == 4);
    CHECK(a.query(Query::select(2)).key.raw() == 2);
}

TEST_CASE("compute_B frozen values and error cases") {
    CHECK(compute_B({16}, 16) == doctest::Approx(0.0));
    CHECK(compute_B({4, 4, 4, 4}, 16) == doctest::Approx(32.0)); // n * log2(m) for m even gaps
    CHECK(compute_B({1, 15}, 16) ==
          doctest::Approx(4.0 + 15.0 * std::log2(16.0 / 15.0)));
    CHECK(compute_B({}, 0) == doctest::Approx(0.0));

    CHECK_THROWS_AS(compute_B({}, 5), TreeError);
    CHECK_THROWS_AS(compute_B({3, 0, 2}, 5), TreeError);
    CHECK_THROWS_AS(compute_B({3, 2}, 6), TreeError);
}

TEST_CASE("multiselect_bound frozen values") {
    CHECK(multiselect_bound(16, {4, 8, 12}) == doctest::Approx(32.0));
    CHECK(multiselect_bound(16, {1}) == doctest::Approx(5.3968).epsilon(0.001)); // 4 + 15*log2(16/15)
    CHECK(multiselect_bound(16, {}) == doctest::Approx(0.0));
    CHECK(multiselect_bound(0, {3}) == doctest::Approx(0.0));
    // clamping and dedup: ranks 0 and 99 clamp to 1 and 16
    CHECK(multiselect_bound(16, {0, 1, 1, 99}) ==
          doctest::Approx(multiselect_bound(16, {1, 16})));
    // a full sweep of every rank costs n log n-ish (sorting bound)
    CHECK(multiselect_bound(8, {1, 2, 3, 4, 5, 6, 7, 8}) == doctest::Approx(24.0)); // 8*log2(8)
}
