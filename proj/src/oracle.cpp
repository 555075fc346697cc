#include "lst/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace lst {

namespace {

bool entry_less(const OracleDict::Entry& a, const OracleDict::Entry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.id < b.id;
}

} // namespace

void OracleDict::insert(RawKey key, std::uint64_t value, std::uint64_t id) {
    Entry e{key, value, id};
    entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), e, entry_less), e);
}

std::size_t OracleDict::find_id(std::uint64_t id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].id == id) return i;
    throw TreeError(Errc::StaleHandle, "oracle: unknown element id");
}

std::pair<RawKey, std::uint64_t> OracleDict::erase(std::uint64_t id) {
    std::size_t i = find_id(id);
    auto out = std::make_pair(entries_[i].key, entries_[i].value);
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

void OracleDict::change_key(std::uint64_t id, RawKey key) {
    std::size_t i = find_id(id);
    Entry e = entries_[i];
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
    e.key = key;
    entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), e, entry_less), e);
}

QueryResult OracleDict::query(const Query& q) const {
    const std::uint64_t n = entries_.size();
    QueryResult res;

    auto fill = [&](const Entry& e) {
        res.has_element = true;
        res.key = Key{e.key};
        res.value = e.value;
        res.handle = reinterpret_cast<Handle>(static_cast<std::uintptr_t>(e.id));
    };
    auto count_less = [&](RawKey k) -> std::uint64_t {
        Entry probe{k, 0, 0};
        return static_cast<std::uint64_t>(
            std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) { return a.key < b.key; }) -
            entries_.begin());
    };
    auto count_le = [&](RawKey k) -> std::uint64_t {
        Entry probe{k, 0, 0};
        return static_cast<std::uint64_t>(
            std::upper_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) { return a.key < b.key; }) -
            entries_.begin());
    };

    switch (q.op) {
        case QueryOp::Select:
            if (q.rank < 1 || q.rank > n)
                throw TreeError(Errc::RankOutOfRange, "select rank outside [1, n]");
            fill(entries_[q.rank - 1]);
            res.rank = q.rank;
            res.effective_rank = q.rank;
            return res;
        case QueryOp::Minimum:
        case QueryOp::Maximum: {
            if (n == 0) throw TreeError(Errc::EmptyTree, "extremum of an empty tree");
            bool maxc = q.op == QueryOp::Maximum;
            fill(maxc ? entries_.back() : entries_.front());
            res.rank = maxc ? n : 1;
            res.effective_rank = res.rank;
            return res;
        }
        case QueryOp::Rank: {
            std::uint64_t less = n ? count_less(q.key.raw()) : 0;
            res.rank = less + 1;
            res.effective_rank = n ? std::min(less + 1, n) : 0;
            return res;
        }
        case QueryOp::Contains: {
            if (n == 0) return res;
            std::uint64_t less = count_less(q.key.raw());
            std::uint64_t le = count_le(q.key.raw());
            res.contained = le > less;
            res.rank = less + 1;
            if (res.contained) fill(entries_[less]);
            res.effective_rank = std::min(less + 1, n);
            return res;
        }
        case QueryOp::Successor: {
            if (n == 0) return res;
            std::uint64_t le = count_le(q.key.raw());
            if (le == n) {
                res.effective_rank = n;
                return res;
            }
            fill(entries_[le]);
            res.rank = le + 1;
            res.effective_rank = le + 1;
            return res;
        }
        case QueryOp::Predecessor: {
            if (n == 0) return res;
            std::uint64_t less = count_less(q.key.raw());
            if (less == 0) {
                res.effective_rank = 1;
                return res;
            }
            fill(entries_[less - 1]);
            res.rank = less;
            res.effective_rank = less;
            return res;
        }
    }
    throw TreeError(Errc::BadArgument, "unknown query");
}

OracleDict OracleDict::split(std::uint64_t r) {
    if (r > entries_.size()) throw TreeError(Errc::RankOutOfRange, "split rank outside [0, n]");
    OracleDict upper;
    upper.entries_.assign(entries_.begin() + static_cast<std::ptrdiff_t>(r), entries_.end());
    entries_.resize(r);
    return upper;
}

void OracleDict::merge(OracleDict&& upper) {
    if (!entries_.empty() && !upper.entries_.empty() &&
        upper.entries_.front().key < entries_.back().key)
        throw TreeError(Errc::OrderViolation, "merge: key ranges overlap");
    entries_.insert(entries_.end(), upper.entries_.begin(), upper.entries_.end());
    upper.entries_.clear();
}

double compute_B(const std::vector<std::uint64_t>& gap_sizes, std::uint64_t n) {
    if (gap_sizes.empty() && n == 0) return 0.0;
    std::uint64_t total = 0;
    for (std::uint64_t s : gap_sizes) {
        if (s == 0) throw TreeError(Errc::InvalidPartition, "zero-sized gap");
        total += s;
    }
    if (total != n) throw TreeError(Errc::InvalidPartition, "gap sizes do not sum to n");
    double b = 0.0;
    for (std::uint64_t s : gap_sizes)
        b += static_cast<double>(s) * std::log2(static_cast<double>(n) / static_cast<double>(s));
    return b;
}

double multiselect_bound(std::uint64_t n, std::vector<std::uint64_t> ranks) {
    if (n == 0) return 0.0;
    for (auto& r : ranks) r = std::min(std::max<std::uint64_t>(r, 1), n);
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    std::vector<std::uint64_t> sizes;
    std::uint64_t prev = 0;
    for (std::uint64_t r : ranks) {
        if (r > prev) sizes.push_back(r - prev);
        prev = r;
    }
    if (n > prev) sizes.push_back(n - prev);
    return compute_B(sizes, n);
}

} // namespace lst
