#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "lst/tree.hpp"

using namespace lst;

namespace {

LazySearchTree tree_of(const std::vector<RawKey>& keys, Mode mode = Mode::RandomizedPivot,
                       std::uint64_t seed = 1) {
    std::vector<std::pair<RawKey, std::uint64_t>> items;
    for (std::size_t i = 0; i < keys.size(); ++i) items.emplace_back(keys[i], i);
    return LazySearchTree::construct(items, mode, seed);
}

// per gap, the sizes of its nonempty intervals, in directory order
std::vector<std::vector<std::size_t>> shape(const LazySearchTree& t) {
    std::vector<std::vector<std::size_t>> out;
    t.index().for_each([&](const GapNode* g) {
        std::vector<std::size_t> sizes;
        for (const auto& iv : g->gap.intervals)
            if (iv->size) sizes.push_back(iv->size);
        out.push_back(sizes);
    });
    return out;
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const TreeError& e) {
        return e.code();
    }
    FAIL("expected a TreeError");
    return Errc::BadArgument;
}

} // namespace

TEST_CASE("construct: one gap, one interval, zero comparisons") {
    auto t = tree_of({9, 2, 7, 4, 4, 11});
    auto st = t.stats();
    CHECK(st.n == 6);
    CHECK(st.gaps == 1);
    CHECK(st.intervals == 1);
    CHECK(st.comparisons == 0);
    CHECK(st.chunks_created == 0);
    CHECK(t.check_invariants().empty());
}

TEST_CASE("exact-median split geometry: 19 elements cut at rank 6") {
    // shuffled 1..19 so element order inside the interval is not pre-sorted
    std::vector<RawKey> keys;
    for (RawKey k = 1; k <= 19; ++k) keys.push_back(k);
    std::mt19937_64 mix(3);
    std::shuffle(keys.begin(), keys.end(), mix);

    auto t = tree_of(keys, Mode::ExactMedian, 1);
    auto r = t.query(Query::select(6));
    CHECK(r.key.raw() == 6);
    CHECK(r.effective_rank == 6);

    // left side halves toward the cut (3,2,1); right side halves outward (3,3,7)
    auto s = shape(t);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == std::vector<std::size_t>{3, 2, 1});
    CHECK(s[1] == std::vector<std::size_t>{3, 3, 7});
    CHECK(t.check_invariants().empty());
    CHECK(t.interval_budget_violations() == 0);
}

TEST_CASE("query conventions match the documented semantics") {
    auto t = tree_of({5, 3, 8, 1});

    CHECK(t.query(Query::select(2)).key.raw() == 3);
    CHECK(t.query(Query::minimum()).key.raw() == 1);
    CHECK(t.query(Query::maximum()).key.raw() == 8);
    CHECK(t.query(Query::maximum()).effective_rank == 4);

    CHECK(t.query(Query::rank_of(0)).rank == 1);
    CHECK(t.query(Query::rank_of(5)).rank == 3);
    CHECK(t.query(Query::rank_of(99)).rank == 5); // n + 1
    CHECK(t.query(Query::rank_of(99)).effective_rank == 4);

    CHECK(t.query(Query::contains(8)).contained);
    CHECK(!t.query(Query::contains(6)).contained);

    CHECK(t.query(Query::successor(3)).key.raw() == 5);
    CHECK(!t.query(Query::successor(8)).has_element);
    CHECK(t.query(Query::predecessor(5)).key.raw() == 3);
    CHECK(!t.query(Query::predecessor(1)).has_element);

    CHECK(t.check_invariants().empty());
}

TEST_CASE("empty tree: key queries answer without restructuring, rank ops throw") {
    LazySearchTree t;
    CHECK(t.size() == 0);
    // rank validation fires before the empty-tree check, as in the reference model
    CHECK(code_of([&] { t.query(Query::select(1)); }) == Errc::RankOutOfRange);
    CHECK(code_of([&] { t.query(Query::minimum()); }) == Errc::EmptyTree);
    CHECK(code_of([&] { t.query(Query::maximum()); }) == Errc::EmptyTree);

    auto r = t.query(Query::rank_of(5));
    CHECK(r.rank == 1);
    CHECK(r.effective_rank == 0);
    CHECK(!t.query(Query::contains(5)).contained);
    CHECK(!t.query(Query::successor(5)).has_element);
    CHECK(!t.query(Query::predecessor(5)).has_element);
    CHECK(t.stats().gaps == 0); // no restructuring happened
}

TEST_CASE("error taxonomy: bad ranks and bad handles") {
    auto t = tree_of({1, 2, 3});
    CHECK(code_of([&] { t.query(Query::select(0)); }) == Errc::RankOutOfRange);
    CHECK(code_of([&] { t.query(Query::select(4)); }) == Errc::RankOutOfRange);

    Handle h = t.insert(10, 99);
    auto out = t.erase(h);
    CHECK(out.first == 10);
    CHECK(out.second == 99);
    CHECK(code_of([&] { t.erase(h); }) == Errc::StaleHandle);
    CHECK(code_of([&] { t.change_key(h, 0); }) == Errc::StaleHandle);

    auto other = tree_of({7});
    Handle foreign = other.insert(8, 0);
    CHECK(code_of([&] { t.erase(foreign); }) == Errc::HandleNotInTree);

    CHECK(code_of([&] { t.split(99); }) == Errc::RankOutOfRange);
}

TEST_CASE("duplicates: counting queries need no scan and stay consistent") {
    auto t = tree_of({7, 7, 7, 2, 7, 9});
    CHECK(t.query(Query::rank_of(7)).rank == 2);
    CHECK(t.query(Query::contains(7)).contained);
    CHECK(t.query(Query::contains(7)).key.raw() == 7);
    CHECK(t.query(Query::successor(7)).key.raw() == 9);
    CHECK(t.query(Query::predecessor(7)).key.raw() == 2);
    CHECK(t.query(Query::select(4)).key.raw() == 7);
    CHECK(t.check_invariants().empty());
}

TEST_CASE("split detaches the upper ranks; merge reassembles") {
    std::vector<RawKey> keys;
    std::mt19937_64 mix(11);
    for (int i = 0; i < 100; ++i) keys.push_back(static_cast<RawKey>(mix() % 1000));
    std::vector<RawKey> sorted = keys;
    std::sort(sorted.begin(), sorted.end());

    auto t = tree_of(keys);
    t.query(Query::select(20)); // leave some structure behind before splitting
    LazySearchTree up = t.split(40);

    CHECK(t.size() == 40);
    CHECK(up.size() == 60);
    CHECK(t.query(Query::maximum()).key.raw() == sorted[39]);
    CHECK(up.query(Query::minimum()).key.raw() == sorted[40]);
    CHECK(t.check_invariants().empty());
    CHECK(up.check_invariants().empty());

    t.merge(std::move(up));
    CHECK(t.size() == 100);
    for (std::uint64_t r : {1, 40, 41, 100})
        CHECK(t.query(Query::select(r)).key.raw() == sorted[r - 1]);
    CHECK(t.check_invariants().empty());
}

TEST_CASE("merge rejects overlapping key ranges") {
    auto low = tree_of({10, 20});
    auto high = tree_of({15, 30});
    low.query(Query::maximum());  // force boundary knowledge on both seams
    high.query(Query::minimum());
    CHECK(code_of([&] { low.merge(std::move(high)); }) == Errc::OrderViolation);
}

TEST_CASE("inserts outside the recorded range after split/merge") {
    auto t = tree_of({10, 20, 30, 40, 50, 60});
    LazySearchTree up = t.split(3); // t keeps 10,20,30

    // beyond the lower tree's recorded top bound
    t.insert(999, 0);
    CHECK(t.query(Query::maximum()).key.raw() == 999);
    CHECK(t.check_invariants().empty());

    // below the upper tree's recorded bottom bound
    up.insert(-999, 0);
    CHECK(up.query(Query::minimum()).key.raw() == -999);
    CHECK(up.check_invariants().empty());
}

TEST_CASE("change_key relocates across the whole structure") {
    auto t = tree_of({1, 2, 3, 4, 5, 6, 7, 8});
    t.query(Query::select(4)); // split the structure so relocation crosses gaps
    Handle h = t.query(Query::minimum()).handle;
    REQUIRE(h != nullptr);
    t.change_key(h, 100);
    CHECK(t.query(Query::maximum()).key.raw() == 100);
    CHECK(t.query(Query::minimum()).key.raw() == 2);
    CHECK(t.size() == 8);
    CHECK(t.check_invariants().empty());
}

TEST_CASE("repeated pop-min yields sorted order in both modes") {
    for (Mode mode : {Mode::ExactMedian, Mode::RandomizedPivot}) {
        std::vector<RawKey> keys;
        std::mt19937_64 mix(5);
        for (int i = 0; i < 300; ++i) keys.push_back(static_cast<RawKey>(mix() % 50));
        std::vector<RawKey> sorted = keys;
        std::sort(sorted.begin(), sorted.end());

        auto t = tree_of(keys, mode, 9);
        for (RawKey want : sorted) {
            auto r = t.query(Query::minimum());
            CHECK(r.key.raw() == want);
            t.erase(r.handle);
        }
        CHECK(t.size() == 0);
    }
}

TEST_CASE("interval budget holds after every query of a mixed run") {
    for (Mode mode : {Mode::ExactMedian, Mode::RandomizedPivot}) {
        LazySearchTree t(mode, 42);
        std::mt19937_64 mix(42);
        for (int i = 0; i < 600; ++i) t.insert(static_cast<RawKey>(mix() % 5000), i);
        for (int i = 0; i < 120; ++i) {
            t.query(Query::select(1 + mix() % t.size()));
            CHECK(t.interval_budget_violations() == 0);
        }
        CHECK(t.check_invariants().empty());
    }
}

TEST_CASE("comparison_count tracks the census and survives split/merge") {
    auto t = tree_of({5, 1, 9, 3, 7, 2, 8});
    t.query(Query::select(3));
    auto st = t.stats();
    CHECK(t.comparison_count() == st.comparisons + st.parent_comparisons);
    std::uint64_t before = t.comparison_count();

    LazySearchTree up = t.split(3);
    // both heirs carry the parent's total; nothing is lost, nothing doubled per heir
    CHECK(t.comparison_count() >= before);
    CHECK(up.comparison_count() >= before);

    std::uint64_t upper_total = up.comparison_count();
    t.merge(std::move(up));
    CHECK(t.comparison_count() >= upper_total);
    auto st2 = t.stats();
    CHECK(t.comparison_count() == st2.comparisons + st2.parent_comparisons);
}
