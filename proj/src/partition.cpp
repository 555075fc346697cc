#include "lst/partition.hpp"

#include <algorithm>

namespace lst {

std::pair<std::size_t, std::size_t> partition3(ElementRecord** v, std::size_t len, Key pk,
                                               const Comparator& cmp) {
    std::size_t lt = 0, i = 0, gt = len;
    while (i < gt) {
        int c = cmp.compare(v[i]->key, pk);
        if (c < 0) {
            std::swap(v[lt], v[i]);
            ++lt;
            ++i;
        } else if (c > 0) {
            --gt;
            std::swap(v[i], v[gt]);
        } else {
            ++i;
        }
    }
    return {lt, gt};
}

SplitCut split_random(ElementRecord** v, std::size_t len, const Comparator& cmp, Rng& rng) {
    Key pk = v[uniform_below(rng, len)]->key;
    auto [lt, gt] = partition3(v, len, pk, cmp);
    std::size_t cut = lt + static_cast<std::size_t>(uniform_below(rng, gt - lt));
    return {cut, pk};
}

namespace {

void insertion_sort(ElementRecord** v, std::size_t len, const Comparator& cmp) {
    for (std::size_t i = 1; i < len; ++i) {
        ElementRecord* e = v[i];
        std::size_t j = i;
        while (j > 0 && cmp.less(e->key, v[j - 1]->key)) {
            v[j] = v[j - 1];
            --j;
        }
        v[j] = e;
    }
}

// Median-of-medians pivot; guarantees a constant-fraction split.
Key mom_pivot(ElementRecord** v, std::size_t len, const Comparator& cmp);

void select_guaranteed(ElementRecord** v, std::size_t len, std::size_t k, const Comparator& cmp) {
    while (true) {
        if (len <= 10) {
            insertion_sort(v, len, cmp);
            return;
        }
        Key pk = mom_pivot(v, len, cmp);
        auto [lt, gt] = partition3(v, len, pk, cmp);
        if (k < lt) {
            len = lt;
        } else if (k < gt) {
            return;
        } else {
            v += gt;
            k -= gt;
            len -= gt;
        }
    }
}

Key mom_pivot(ElementRecord** v, std::size_t len, const Comparator& cmp) {
    std::size_t groups = 0;
    for (std::size_t i = 0; i < len; i += 5) {
        std::size_t g = std::min<std::size_t>(5, len - i);
        insertion_sort(v + i, g, cmp);
        // move the group median to the front block
        std::swap(v[groups], v[i + g / 2]);
        ++groups;
    }
    select_guaranteed(v, groups, groups / 2, cmp);
    return v[groups / 2]->key;
}

} // namespace

// Median of three random samples: 2-3 comparisons buy a markedly more central
// pivot, cutting the expected partition mass of the whole selection.
static Key med3_pivot(ElementRecord** v, std::size_t len, const Comparator& cmp, Rng& rng) {
    Key a = v[uniform_below(rng, len)]->key;
    Key b = v[uniform_below(rng, len)]->key;
    Key c = v[uniform_below(rng, len)]->key;
    if (cmp.less(b, a)) std::swap(a, b);
    if (cmp.less(c, b)) {
        std::swap(b, c);
        if (cmp.less(b, a)) std::swap(a, b);
    }
    return b;
}

void select_nth(ElementRecord** v, std::size_t len, std::size_t k, const Comparator& cmp, Rng& rng) {
    int budget = 2;
    std::size_t n = len;
    while (n > 1) budget += 2, n >>= 1; // ~2 log2(len) random rounds before the fallback

    while (true) {
        if (len <= 10) {
            insertion_sort(v, len, cmp);
            return;
        }
        if (budget-- <= 0) {
            select_guaranteed(v, len, k, cmp);
            return;
        }
        Key pk = med3_pivot(v, len, cmp, rng);
        auto [lt, gt] = partition3(v, len, pk, cmp);
        if (k < lt) {
            len = lt;
        } else if (k < gt) {
            return;
        } else {
            v += gt;
            k -= gt;
            len -= gt;
        }
    }
}

} // namespace lst
