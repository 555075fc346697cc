#ifndef LST_GAP_OPS_HPP
#define LST_GAP_OPS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "lst/partition.hpp"
#include "lst/structure.hpp"

namespace lst {

enum class Mode : std::uint8_t { ExactMedian, RandomizedPivot };

struct LocatedRank {
    std::size_t idx;   // directory index of a nonempty interval
    std::size_t inner; // 1-based rank inside that interval
};

// Interval containing the gap-local rank (1 <= local <= gap size).
LocatedRank locate_for_rank(const Gap& g, std::uint64_t local);

// Placement decision plus the boundary facts the probes proved along the way,
// so callers can maintain duplicate-boundary counts without re-comparing.
struct IntervalSlot {
    std::size_t idx = 0;
    bool hi_known = false; // k vs hi(idx) settled by a probe
    bool hi_eq = false;    // ... and found equal
    bool lo_known = false; // a probe proved k > lo(idx) strictly
};

// First interval admitting k (k <= hi), found by exponential search outward
// from `anchor`; probe comparisons land on cmp (and *probes if given).
IntervalSlot interval_locate(const Gap& g, const Comparator& cmp, Key k, std::size_t anchor,
                             std::uint64_t* probes);
std::size_t interval_search(const Gap& g, const Comparator& cmp, Key k, std::size_t anchor,
                            std::uint64_t* probes);

// Anchor for insertions: the last left-side interval (or the first interval
// when everything sits on the right side).
std::size_t middlemost_anchor(const Gap& g);

// Dropping emptied intervals leaves key-range holes between neighbors; if k
// falls in such a hole, stretch the chosen interval's bound back to cover it.
// Raw comparisons only (pure bookkeeping).
void stretch_interval_for(Gap& g, std::size_t idx, Key k);

// Append a new element; returns its record. Does not touch gap.size. eq_lo /
// eq_hi say whether k matches the interval's finite boundary keys (the caller
// already owns that evidence).
ElementRecord* interval_append(Interval& iv, Key k, std::uint64_t value, bool eq_lo, bool eq_hi);

// Move an existing record into an interval (change-key relocation).
void interval_adopt(Interval& iv, ElementRecord* e, bool eq_lo, bool eq_hi);

// Resolve an IntervalSlot's open boundary questions for interval g[s.idx],
// paying a counted comparison only where the probes left it unknown.
std::pair<bool, bool> settle_dups(const Gap& g, const IntervalSlot& s, const Comparator& cmp,
                                  Key k);

// Detach a record from its interval (leaves it alive, unowned).
void interval_detach(ElementRecord* e);

// Element counts against a key within one gap. At most one interval strictly
// straddles k; everything else resolves through bounds and duplicate counts.
struct GapCount {
    std::uint64_t less = 0;
    std::uint64_t eq = 0;
    ElementRecord* witness = nullptr; // some element == k, if requested and present here
};
GapCount gap_count_less_eq(const Gap& g, const Comparator& cmp, Key k, bool need_witness);

// Number of elements <= k within the gap.
std::uint64_t gap_count_le(const Gap& g, const Comparator& cmp, Key k);

ElementRecord* gap_min_element(const Gap& g, const Comparator& cmp);
ElementRecord* gap_max_element(const Gap& g, const Comparator& cmp);

// Interval balance rule: recompute sides (each interval leans toward its
// nearer queried boundary; ties lean left) and greedily merge any interval
// dominated by its outward neighborhood into its inward neighbor. Also drops
// lazily emptied intervals and refreshes directory positions.
void apply_rule_b(Gap& g);

std::size_t nonempty_interval_count(const Gap& g);

// Five-step split of interval I at inner rank (1-based). The rank element
// becomes the last of the left pieces (max_convention=false) or the first of
// the right pieces (true). Emits at most three pieces per side, sized so
// piece lengths roughly halve toward the cut. I is left emptied.
struct IntervalSplit {
    ElementRecord* answer = nullptr;
    Key boundary{}; // splitting key at the main cut
    std::vector<std::unique_ptr<Interval>> left_pieces;
    std::vector<std::unique_ptr<Interval>> right_pieces;
};

IntervalSplit split_interval(Interval& I, std::size_t inner, bool max_convention, Mode mode,
                             const Comparator& cmp, Rng& rng, std::uint64_t& chunks_created);

} // namespace lst

#endif
