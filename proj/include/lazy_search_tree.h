/* Lazy search tree: a sorted dictionary that defers ordering work until
 * queries demand it. Plain C surface over the C++ core; every object is an
 * opaque pointer and every fallible call returns an lst_status. */
#ifndef LAZY_SEARCH_TREE_H
#define LAZY_SEARCH_TREE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lst_tree lst_tree;
typedef struct lst_oracle lst_oracle;

/* Opaque element token; 0 is never valid. Tokens stay valid across
 * change_key/split/merge and go stale on erase. */
typedef uint64_t lst_handle;
typedef int64_t lst_key;

typedef enum {
    LST_OK = 0,
    LST_ERR_EMPTY_TREE = 1,
    LST_ERR_RANK_OUT_OF_RANGE = 2,
    LST_ERR_STALE_HANDLE = 3,
    LST_ERR_HANDLE_NOT_IN_TREE = 4,
    LST_ERR_ORDER_VIOLATION = 5,
    LST_ERR_INVALID_PARTITION = 6,
    LST_ERR_BAD_ARGUMENT = 7,
    LST_ERR_INVARIANT = 8
} lst_status;

typedef enum {
    LST_MODE_EXACT_MEDIAN = 0,
    LST_MODE_RANDOMIZED_PIVOT = 1
} lst_mode;

typedef enum {
    LST_QUERY_RANK = 0,
    LST_QUERY_SELECT = 1,
    LST_QUERY_CONTAINS = 2,
    LST_QUERY_SUCCESSOR = 3,
    LST_QUERY_PREDECESSOR = 4,
    LST_QUERY_MINIMUM = 5,
    LST_QUERY_MAXIMUM = 6
} lst_query_op;

typedef struct {
    int has_element;
    lst_key key;
    uint64_t value;
    lst_handle handle;
    uint64_t rank;           /* for RANK: 1 + count of smaller keys (may be n+1) */
    int contained;           /* for CONTAINS */
    uint64_t effective_rank; /* rank the structure organized around; 0 when empty */
} lst_result;

typedef struct {
    uint64_t n;
    uint64_t gaps;
    uint64_t intervals;
    uint64_t chunks_created; /* query-time interval pieces */
    uint64_t base_chunks;    /* construction / revival chunks */
    uint64_t queries;
    uint64_t comparisons;        /* this tree's counter (fresh after split/merge) */
    uint64_t parent_comparisons; /* final counts inherited from ancestor trees */
    uint64_t insert_probes;
    uint64_t inserts;
    double bound_b; /* sum over gaps of |gap| * log2(n/|gap|) */
} lst_tree_stats;

lst_tree* lst_create(lst_mode mode, uint64_t seed);
/* Bulk construction: zero comparisons; one gap, one interval. values may be
 * NULL (then value = index). */
lst_tree* lst_construct(const lst_key* keys, const uint64_t* values, size_t count, lst_mode mode,
                        uint64_t seed);
void lst_destroy(lst_tree* t);
uint64_t lst_size(const lst_tree* t);

lst_status lst_insert(lst_tree* t, lst_key key, uint64_t value, lst_handle* out);
lst_status lst_erase(lst_tree* t, lst_handle h, lst_key* out_key, uint64_t* out_value);
lst_status lst_change_key(lst_tree* t, lst_handle h, lst_key new_key);

/* key is used by RANK/CONTAINS/SUCCESSOR/PREDECESSOR, rank by SELECT. */
lst_status lst_query(lst_tree* t, lst_query_op op, lst_key key, uint64_t rank, lst_result* out);

/* Ranks r+1..n move to *out_upper; t keeps 1..r. Both sides restart their
 * comparison counters; the parent's final count lands in parent_comparisons. */
lst_status lst_split(lst_tree* t, uint64_t rank, lst_tree** out_upper);
/* All keys of upper must follow t's. On success upper is consumed and freed. */
lst_status lst_merge(lst_tree* t, lst_tree* upper);

lst_status lst_get_stats(const lst_tree* t, lst_tree_stats* out);
/* comparisons + parent_comparisons without the full census walk (O(1)). */
uint64_t lst_comparison_count(const lst_tree* t);
/* Full consistency audit; LST_ERR_INVARIANT copies a description into msg. */
lst_status lst_check(const lst_tree* t, char* msg, size_t msg_len);
/* Gaps currently holding more nonempty intervals than 4*max(log2(size),1). */
uint64_t lst_interval_budget_violations(const lst_tree* t);

/* Reference model with identical answer conventions, keyed by caller-chosen
 * element ids (returned in lst_result.handle). */
lst_oracle* lst_oracle_create(void);
void lst_oracle_destroy(lst_oracle* o);
uint64_t lst_oracle_size(const lst_oracle* o);
lst_status lst_oracle_insert(lst_oracle* o, lst_key key, uint64_t value, uint64_t id);
lst_status lst_oracle_erase(lst_oracle* o, uint64_t id, lst_key* out_key, uint64_t* out_value);
lst_status lst_oracle_change_key(lst_oracle* o, uint64_t id, lst_key new_key);
lst_status lst_oracle_query(const lst_oracle* o, lst_query_op op, lst_key key, uint64_t rank,
                            lst_result* out);
lst_status lst_oracle_split(lst_oracle* o, uint64_t rank, lst_oracle** out_upper);
lst_status lst_oracle_merge(lst_oracle* o, lst_oracle* upper); /* consumes upper on success */

/* B for an explicit gap partition (sizes must be positive and sum to n). */
lst_status lst_compute_b(const uint64_t* gap_sizes, size_t count, uint64_t n, double* out);
/* B induced by query ranks over n elements (clamped, deduplicated). */
double lst_multiselect_bound(uint64_t n, const uint64_t* ranks, size_t count);

#ifdef __cplusplus
}
#endif

#endif
