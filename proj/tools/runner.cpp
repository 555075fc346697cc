#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lazy_search_tree.h"
#include "workload.hpp"

namespace wl {

namespace {

using Clock = std::chrono::steady_clock;

double lg(double x) { return x >= 2.0 ? std::log2(x) : 1.0; }

struct TState {
    lst_tree* t = nullptr;
    lst_oracle* o = nullptr;
    std::uint64_t q = 0;
    std::uint64_t last_total = 0; // comparisons + parent_comparisons at last settle
    std::uint64_t time_ns = 0;
};

// Owns every live tree/oracle so an exception mid-run cannot leak them.
struct Registry {
    std::map<std::uint64_t, TState> trees;
    ~Registry() {
        for (auto& [id, ts] : trees) {
            lst_destroy(ts.t);
            lst_oracle_destroy(ts.o);
        }
    }
};

std::uint64_t tree_total(lst_tree* t) { return lst_comparison_count(t); }

lst_query_op to_c_op(OpKind k) {
    switch (k) {
        case OpKind::Select: return LST_QUERY_SELECT;
        case OpKind::Rank: return LST_QUERY_RANK;
        case OpKind::Contains: return LST_QUERY_CONTAINS;
        case OpKind::Succ: return LST_QUERY_SUCCESSOR;
        case OpKind::Pred: return LST_QUERY_PREDECESSOR;
        case OpKind::Min: return LST_QUERY_MINIMUM;
        default: return LST_QUERY_MAXIMUM;
    }
}

bool same_answer(const lst_result& a, const lst_result& b) {
    if (a.has_element != b.has_element) return false;
    if (a.has_element && a.key != b.key) return false; // values differ only among ties
    return a.rank == b.rank && a.contained == b.contained &&
           a.effective_rank == b.effective_rank;
}

std::string describe(const lst_result& r) {
    std::ostringstream os;
    os << "has=" << r.has_element;
    if (r.has_element) os << " key=" << r.key;
    os << " rank=" << r.rank << " contained=" << r.contained << " eff=" << r.effective_rank;
    return os.str();
}

} // namespace

RunReport run(const Script& s, const RunOptions& opt) {
    RunReport rep;
    Registry reg;
    std::uint64_t cur = 0, next_id = 1;
    std::vector<lst_handle> handles; // by insertion index
    const lst_mode mode = opt.mode == 0 ? LST_MODE_EXACT_MEDIAN : LST_MODE_RANDOMIZED_PIVOT;

    {
        TState ts;
        ts.t = lst_create(mode, opt.seed);
        if (opt.verify) ts.o = lst_oracle_create();
        reg.trees.emplace(0, ts);
    }

    auto settle = [&](TState& ts) {
        std::uint64_t tot = tree_total(ts.t);
        rep.total_comparisons += tot - ts.last_total;
        ts.last_total = tot;
    };
    auto note_mismatch = [&](const Op& op, const std::string& what) {
        ++rep.mismatches;
        if (rep.first_mismatch.empty())
            rep.first_mismatch = "line " + std::to_string(op.line) + ": " + what;
    };
    auto note_error = [&](const Op& op, const std::string& what) {
        ++rep.op_errors;
        if (rep.first_error.empty())
            rep.first_error = "line " + std::to_string(op.line) + ": " + what;
    };

    const auto wall_start = Clock::now();
    for (const Op& op : s.ops) {
        auto it = reg.trees.find(cur);
        if (it == reg.trees.end())
            throw ScriptError(op.line, "current tree " + std::to_string(cur) + " is gone");
        TState& ts = it->second;
        const auto t0 = Clock::now();

        switch (op.kind) {
            case OpKind::Insert: {
                std::uint64_t before = lst_comparison_count(ts.t);
                std::uint64_t idx = handles.size();
                lst_handle h = 0;
                lst_insert(ts.t, op.key, idx, &h);
                handles.push_back(h);
                ++rep.insert_ops;
                rep.insert_comparisons += lst_comparison_count(ts.t) - before;
                if (opt.verify) lst_oracle_insert(ts.o, op.key, idx, idx);
                break;
            }

            case OpKind::Select:
            case OpKind::Rank:
            case OpKind::Contains:
            case OpKind::Succ:
            case OpKind::Pred:
            case OpKind::Min:
            case OpKind::Max: {
                lst_result r{};
                lst_status st = lst_query(ts.t, to_c_op(op.kind), op.key, op.rank, &r);
                if (st == LST_OK) {
                    ++rep.total_queries;
                    ++ts.q;
                    if (opt.collect_answers && r.has_element &&
                        (op.kind == OpKind::Select || op.kind == OpKind::Min ||
                         op.kind == OpKind::Max))
                        rep.answers.push_back(r.key);
                } else {
                    note_error(op, "query failed with status " + std::to_string(st));
                }
                if (opt.verify) {
                    lst_result ro{};
                    lst_status so = lst_oracle_query(ts.o, to_c_op(op.kind), op.key, op.rank, &ro);
                    if (so != st)
                        note_mismatch(op, "status " + std::to_string(st) + " vs oracle " +
                                              std::to_string(so));
                    else if (st == LST_OK && !same_answer(r, ro))
                        note_mismatch(op, "got [" + describe(r) + "] oracle [" + describe(ro) + "]");
                }
                break;
            }

            case OpKind::PopMin:
            case OpKind::PopMax: {
                bool mx = op.kind == OpKind::PopMax;
                lst_result r{};
                lst_status st =
                    lst_query(ts.t, mx ? LST_QUERY_MAXIMUM : LST_QUERY_MINIMUM, 0, 0, &r);
                std::int64_t popped_key = 0;
                if (st == LST_OK) {
                    ++rep.total_queries;
                    ++ts.q;
                    lst_erase(ts.t, r.handle, &popped_key, nullptr);
                    if (opt.collect_answers) rep.answers.push_back(popped_key);
                } else {
                    note_error(op, mx ? "pop_max on empty tree" : "pop_min on empty tree");
                }
                if (opt.verify) {
                    lst_result ro{};
                    lst_status so =
                        lst_oracle_query(ts.o, mx ? LST_QUERY_MAXIMUM : LST_QUERY_MINIMUM, 0, 0, &ro);
                    if (so != st) {
                        note_mismatch(op, "pop status disagrees with oracle");
                    } else if (st == LST_OK) {
                        if (ro.key != popped_key)
                            note_mismatch(op, "popped " + std::to_string(popped_key) + " oracle " +
                                                  std::to_string(ro.key));
                        // erase the same element (by insertion id); ties make the
                        // oracle's own extremum id ambiguous
                        if (lst_oracle_erase(ts.o, r.value, nullptr, nullptr) != LST_OK)
                            note_mismatch(op, "oracle lacks popped element");
                    }
                }
                break;
            }

            case OpKind::Delete:
            case OpKind::ChangeKey: {
                if (op.idx >= handles.size())
                    throw ScriptError(op.line, "@" + std::to_string(op.idx) +
                                                   " references an element never inserted");
                lst_handle h = handles[op.idx];
                bool found = false, stale = false;
                std::int64_t out_key = 0;
                for (auto& [id, st2] : reg.trees) {
                    lst_status st = op.kind == OpKind::Delete
                                        ? lst_erase(st2.t, h, &out_key, nullptr)
                                        : lst_change_key(st2.t, h, op.key);
                    if (st == LST_OK) {
                        found = true;
                        break;
                    }
                    if (st == LST_ERR_HANDLE_NOT_IN_TREE) continue;
                    stale = true;
                    break;
                }
                if (!found)
                    note_error(op, stale ? "element @" + std::to_string(op.idx) + " already deleted"
                                         : "element @" + std::to_string(op.idx) + " not in any tree");
                if (opt.verify) {
                    bool ofound = false;
                    for (auto& [id, st2] : reg.trees) {
                        lst_status st = op.kind == OpKind::Delete
                                            ? lst_oracle_erase(st2.o, op.idx, nullptr, nullptr)
                                            : lst_oracle_change_key(st2.o, op.idx, op.key);
                        if (st == LST_OK) {
                            ofound = true;
                            break;
                        }
                    }
                    if (ofound != found) note_mismatch(op, "element presence disagrees with oracle");
                }
                break;
            }

            case OpKind::Split: {
                settle(ts);
                lst_tree* upper = nullptr;
                lst_status st = lst_split(ts.t, op.rank, &upper);
                if (st != LST_OK) {
                    note_error(op, "split rank " + std::to_string(op.rank) + " out of range");
                    if (opt.verify) {
                        lst_oracle* ou = nullptr;
                        if (lst_oracle_split(ts.o, op.rank, &ou) == LST_OK)
                            note_mismatch(op, "oracle accepted a split the tree rejected");
                    }
                    break;
                }
                std::uint64_t a = next_id++, b = next_id++;
                TState lower = ts, upper_ts;
                lower.last_total = tree_total(lower.t); // pre-split work already settled
                upper_ts.t = upper;
                upper_ts.last_total = tree_total(upper); // shared ancestry, counted once
                upper_ts.time_ns = 0;
                if (opt.verify) {
                    lst_oracle* ou = nullptr;
                    if (lst_oracle_split(ts.o, op.rank, &ou) != LST_OK)
                        note_mismatch(op, "oracle rejected a split the tree accepted");
                    upper_ts.o = ou ? ou : lst_oracle_create();
                }
                rep.total_comparisons += lower.last_total - ts.last_total;
                reg.trees.erase(cur);
                reg.trees.emplace(a, lower);
                reg.trees.emplace(b, upper_ts);
                cur = a;
                if (opt.echo_splits) std::cout << "split -> " << a << " " << b << "\n";
                break;
            }

            case OpKind::Merge: {
                auto ia = reg.trees.find(op.a), ib = reg.trees.find(op.b);
                if (ia == reg.trees.end() || ib == reg.trees.end() || op.a == op.b)
                    throw ScriptError(op.line, "merge references unknown tree ids");
                TState& ta = ia->second;
                TState& tb = ib->second;
                settle(ta);
                settle(tb);
                lst_status st = lst_merge(ta.t, tb.t);
                lst_status so = LST_OK;
                if (opt.verify) so = lst_oracle_merge(ta.o, tb.o);
                if (st == LST_OK) {
                    if (opt.verify && so != LST_OK)
                        note_mismatch(op, "oracle rejected a merge the tree accepted");
                    ta.last_total += tb.last_total; // upper's lineage now counted inside ta
                    std::uint64_t new_tot = tree_total(ta.t);
                    rep.total_comparisons += new_tot - ta.last_total;
                    ta.last_total = new_tot;
                    ta.q += tb.q;
                    ta.time_ns += tb.time_ns;
                    if (opt.verify && so == LST_OK) tb.o = nullptr; // consumed
                    lst_oracle_destroy(tb.o);
                    reg.trees.erase(ib);
                    if (cur == op.b) cur = op.a;
                } else {
                    note_error(op, "merge rejected: key ranges overlap");
                    if (opt.verify && so == LST_OK)
                        note_mismatch(op, "oracle accepted a merge the tree rejected");
                }
                break;
            }

            case OpKind::Use: {
                if (reg.trees.find(op.a) == reg.trees.end())
                    throw ScriptError(op.line, "use references unknown tree id " +
                                                   std::to_string(op.a));
                cur = op.a;
                break;
            }
        }

        // `ts` may dangle after split/merge; re-find for attribution
        auto here = reg.trees.find(cur);
        if (here != reg.trees.end())
            here->second.time_ns += static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
        ++rep.ops_executed;

        if (opt.check_interval_bound)
            for (auto& [id, st2] : reg.trees)
                rep.bound_violations += lst_interval_budget_violations(st2.t);
        if (opt.check_invariants && rep.invariant_failure.empty()) {
            char msg[512];
            for (auto& [id, st2] : reg.trees)
                if (lst_check(st2.t, msg, sizeof msg) != LST_OK) {
                    rep.invariant_failure =
                        "line " + std::to_string(op.line) + " tree " + std::to_string(id) + ": " + msg;
                    break;
                }
        }
    }
    rep.wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - wall_start).count());

    for (auto& [id, ts] : reg.trees) {
        settle(ts);
        lst_tree_stats st;
        lst_get_stats(ts.t, &st);
        TreeRow row;
        row.tree_id = id;
        row.n = st.n;
        row.q = ts.q;
        row.comparisons = st.comparisons + st.parent_comparisons;
        row.b = st.bound_b;
        double n = static_cast<double>(st.n), q = static_cast<double>(ts.q);
        row.uniform_bound = n * (ts.q > 0 ? lg(q) : 1.0) + q * lg(n);
        row.gaps = st.gaps;
        row.intervals = st.intervals;
        row.chunks = st.chunks_created;
        row.time_ns = ts.time_ns;
        rep.rows.push_back(row);
        rep.final_n += st.n;
        rep.final_b += st.bound_b;
        rep.chunks_created += st.chunks_created;
        rep.base_chunks += st.base_chunks;
        ++rep.live_trees;
    }

    if (!opt.csv_path.empty()) {
        std::ofstream f(opt.csv_path);
        if (!f) throw std::runtime_error("cannot write " + opt.csv_path);
        f << "n,q,comparisons,B,uniform_bound,gaps,intervals,chunks,time_ns\n";
        for (const TreeRow& r : rep.rows)
            f << r.n << ',' << r.q << ',' << r.comparisons << ',' << r.b << ','
              << r.uniform_bound << ',' << r.gaps << ',' << r.intervals << ',' << r.chunks << ','
              << r.time_ns << "\n";
    }
    return rep;
}

std::string summarize(const RunReport& r) {
    std::ostringstream os;
    os << "ops=" << r.ops_executed << "\n"
       << "queries=" << r.total_queries << "\n"
       << "comparisons=" << r.total_comparisons << "\n"
       << "inserts=" << r.insert_ops << "\n"
       << "insert_comparisons=" << r.insert_comparisons << "\n"
       << "n=" << r.final_n << "\n"
       << "B=" << r.final_b << "\n"
       << "live_trees=" << r.live_trees << "\n"
       << "chunks_created=" << r.chunks_created << "\n"
       << "base_chunks=" << r.base_chunks << "\n"
       << "mismatches=" << r.mismatches << "\n"
       << "op_errors=" << r.op_errors << "\n"
       << "bound_violations=" << r.bound_violations << "\n"
       << "wall_ns=" << r.wall_ns << "\n";
    return os.str();
}

} // namespace wl
