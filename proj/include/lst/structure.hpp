#ifndef LST_STRUCTURE_HPP
#define LST_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "lst/key.hpp"

namespace lst {

struct Interval;
struct Gap;
struct GapNode;
struct Chunk;

// Union-find cell. Elements point at a cell; chasing parents (with path
// compression) yields the cell that names the element's current interval.
// Interval merges union the two cell sets in O(1) instead of retagging
// every element.
struct OwnerCell {
    OwnerCell* parent = nullptr;
    Interval* interval = nullptr; // set on root cells only
};

inline OwnerCell* cell_root(OwnerCell* c) {
    OwnerCell* r = c;
    while (r->parent) r = r->parent;
    while (c->parent) {
        OwnerCell* next = c->parent;
        c->parent = r;
        c = next;
    }
    return r;
}

struct ElementRecord {
    Key key;
    std::uint64_t value = 0;
    OwnerCell* owner = nullptr;
    Chunk* chunk = nullptr;
    std::uint32_t slot = 0;
    bool alive = true;
};

using Handle = ElementRecord*;

// Contiguous block of element pointers. A chunk that still holds items when
// destroyed owns them; code that moves records elsewhere must clear `items`
// first.
struct Chunk {
    std::vector<ElementRecord*> items;

    ~Chunk() {
        for (ElementRecord* e : items) delete e;
    }

    void push(ElementRecord* e) {
        if (items.capacity() == items.size())
            items.reserve(items.capacity() == 0 ? 8 : items.capacity() * 2);
        e->chunk = this;
        e->slot = static_cast<std::uint32_t>(items.size());
        items.push_back(e);
    }

    // Swap-with-last removal; fixes the swapped record's slot.
    void erase_slot(std::uint32_t slot) {
        ElementRecord* last = items.back();
        items[slot] = last;
        last->slot = slot;
        items.pop_back();
        if (items.capacity() >= 16 && items.size() * 4 <= items.capacity()) {
            std::vector<ElementRecord*> shrunk;
            shrunk.reserve(items.size() < 8 ? 8 : items.size() * 2);
            shrunk.assign(items.begin(), items.end());
            items.swap(shrunk);
            for (std::uint32_t i = 0; i < items.size(); ++i) {
                items[i]->chunk = this;
                items[i]->slot = i;
            }
        }
    }
};

enum class Side : std::uint8_t { Left, Right };

// Run of unsorted elements inside a gap. Elements satisfy lo <= key <= hi;
// dup_lo/dup_hi count elements equal to the finite endpoints so that queries
// landing exactly on a splitting key need no scan here.
struct Interval {
    std::vector<std::unique_ptr<Chunk>> chunks;
    std::size_t size = 0;
    Bound lo = Bound::neg_inf();
    Bound hi = Bound::pos_inf();
    std::size_t dup_lo = 0;
    std::size_t dup_hi = 0;
    Side side = Side::Left;
    std::size_t pos = 0; // index in the owning gap's directory; refreshed on rebuild
    Gap* gap = nullptr;
    std::vector<std::unique_ptr<OwnerCell>> cells;

    OwnerCell* fresh_cell() {
        cells.push_back(std::make_unique<OwnerCell>());
        OwnerCell* c = cells.back().get();
        c->interval = this;
        return c;
    }

    Chunk* tail_chunk() {
        if (chunks.empty()) chunks.push_back(std::make_unique<Chunk>());
        return chunks.back().get();
    }
};

inline Interval* interval_of(ElementRecord* e) {
    return cell_root(e->owner)->interval;
}

// Maximal run of ranks no query has cut into. Keys in (lo, hi]; elements
// equal to lo may also sit here (boundary ties go to the lower gap).
struct Gap {
    std::vector<std::unique_ptr<Interval>> intervals;
    std::uint64_t size = 0;
    Bound lo = Bound::neg_inf();
    Bound hi = Bound::pos_inf();
    bool left_queried = false;
    bool right_queried = false;
    std::size_t first_right = 1; // directory index of the first right-side interval
    GapNode* node = nullptr;
};

} // namespace lst

#endif
