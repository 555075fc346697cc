#ifndef LST_PARTITION_HPP
#define LST_PARTITION_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "lst/structure.hpp"

namespace lst {

using Rng = std::mt19937_64;

// Unbiased uniform draw from {0..n-1}, n > 0. Kept explicit (rather than
// std::uniform_int_distribution) so runs are reproducible across standard
// library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % n;
}

// Three-way partition of v[0..len) around pivot key pk: one counted
// comparison per element. Returns [lt, gt), the equal block.
std::pair<std::size_t, std::size_t> partition3(ElementRecord** v, std::size_t len, Key pk,
                                               const Comparator& cmp);

struct SplitCut {
    std::size_t cut; // pieces are v[0..cut) and v[cut..len)
    Key key;         // splitting key: max(left) <= key <= min(right)
};

// Randomized half-split: uniform pivot element, three-way partition, cut
// placed uniformly inside the equal block. The resulting left size is
// uniform on {0..len-1}; the right piece is never empty.
SplitCut split_random(ElementRecord** v, std::size_t len, const Comparator& cmp, Rng& rng);

// Exact selection: afterwards v[k] is the element of 0-based rank k, with
// no-greater elements before it and no-smaller after. Randomized quickselect
// with a median-of-medians fallback, so worst case stays linear.
void select_nth(ElementRecord** v, std::size_t len, std::size_t k, const Comparator& cmp, Rng& rng);

} // namespace lst

#endif
