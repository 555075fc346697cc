#ifndef LST_KEY_HPP
#define LST_KEY_HPP

#include <cstdint>

namespace lst {

using RawKey = std::int64_t;

// Opaque ordered key. Deliberately has no comparison operators: every
// ordering decision must go through a Comparator so it can be counted.
class Key {
public:
    Key() : v_(0) {}
    explicit Key(RawKey v) : v_(v) {}
    RawKey raw() const { return v_; }

private:
    RawKey v_;
};

// Total order on keys with a monotone comparison counter. One counter per
// tree; trees produced by split/merge start fresh (the parent's final count
// is kept in their stats snapshot).
class Comparator {
public:
    int compare(Key a, Key b) const {
        ++count_;
        if (a.raw() < b.raw()) return -1;
        if (b.raw() < a.raw()) return 1;
        return 0;
    }
    bool less(Key a, Key b) const { return compare(a, b) < 0; }
    bool less_eq(Key a, Key b) const { return compare(a, b) <= 0; }
    bool equal(Key a, Key b) const { return compare(a, b) == 0; }

    std::uint64_t comparisons() const { return count_; }
    void reset() { count_ = 0; }

private:
    mutable std::uint64_t count_ = 0;
};

// Splitting/boundary key with -inf / +inf sentinels at the extremes.
// Comparisons against an infinite bound are free (no key comparison).
struct Bound {
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    Kind kind = Kind::NegInf;
    Key key{};

    static Bound neg_inf() { return Bound{Kind::NegInf, Key{}}; }
    static Bound pos_inf() { return Bound{Kind::PosInf, Key{}}; }
    static Bound at(Key k) { return Bound{Kind::Finite, k}; }

    bool finite() const { return kind == Kind::Finite; }
};

// key <= bound
inline bool le_bound(const Comparator& cmp, Key k, const Bound& b) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return false;
        case Bound::Kind::PosInf: return true;
        default: return cmp.less_eq(k, b.key);
    }
}

// key < bound
inline bool lt_bound(const Comparator& cmp, Key k, const Bound& b) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return false;
        case Bound::Kind::PosInf: return true;
        default: return cmp.less(k, b.key);
    }
}

// bound <= key
inline bool bound_le(const Comparator& cmp, const Bound& b, Key k) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return true;
        case Bound::Kind::PosInf: return false;
        default: return cmp.less_eq(b.key, k);
    }
}

// bound < key
inline bool bound_lt(const Comparator& cmp, const Bound& b, Key k) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return true;
        case Bound::Kind::PosInf: return false;
        default: return cmp.less(b.key, k);
    }
}

inline bool eq_bound(const Comparator& cmp, Key k, const Bound& b) {
    return b.finite() && cmp.equal(k, b.key);
}

// Uncounted bound-vs-bound order, for debug checking and merge seam checks
// where both sides are recorded boundaries rather than live elements.
inline bool bound_raw_le(const Bound& a, const Bound& b) {
    if (a.kind == Bound::Kind::NegInf || b.kind == Bound::Kind::PosInf) return true;
    if (a.kind == Bound::Kind::PosInf || b.kind == Bound::Kind::NegInf) return false;
    return a.key.raw() <= b.key.raw();
}

} // namespace lst

#endif
