#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rlub/grammar_core.hpp"

// Segment indexing of integer sequences, bounded-part compositions (Div), and
// the schedule-dominance relation between indexed control pairs. These are
// the combinatorial primitives behind the condition checker and the
// synthesizer.

namespace rlub {

// A control sequence together with an equal-length sequence of per-step
// derivation depths.
struct IndexedPair {
    Word tau;
    std::vector<int> lambda;
};

using Division = std::vector<int>;

long long seq_sum(std::span<const int> lambda);

// Smallest 1-based j whose prefix sum of lambda reaches i. Requires
// 1 <= i <= seq_sum(lambda); throws std::out_of_range otherwise.
int seg_index(std::span<const int> lambda, long long i);

// All length-n sequences with entries in mu summing to m, in lexicographic
// order. Requires n >= 1 and m >= 0; the empty set is a valid answer.
std::vector<Division> div_enumerate(int n, long long m, const Interval& mu);

// True iff every entry lies in mu.
bool entries_in(std::span<const int> lambda, const Interval& mu);

// Schedule dominance (tau1,lambda1) => (tau2,lambda2): equal depth totals,
// depth-bound transfer (lambda1 within mu_b forces lambda2 within mu_t), and
// segment-wise order dominance position by position. Throws
// std::invalid_argument on malformed pairs or symbols outside the carrier.
bool relation_holds(const IndexedPair& p1, const IndexedPair& p2,
                    const GenerativeCondition& gc, const PartialOrder& ord);

// Searches for the lexicographically least lambda2 making
// relation_holds(p1, (tau2, lambda2)) true. positive_only restricts entries
// to >= 1 (otherwise >= 0). Decided by a per-position DP over segment
// boundaries rather than composition enumeration.
std::optional<Division> exists_witness(const IndexedPair& p1, const Word& tau2,
                                       const GenerativeCondition& gc,
                                       const PartialOrder& ord,
                                       bool positive_only);

// Same answer as exists_witness via full composition enumeration. Test
// oracle; cost grows as C(m-1, k-1).
std::optional<Division> exists_witness_bruteforce(const IndexedPair& p1,
                                                  const Word& tau2,
                                                  const GenerativeCondition& gc,
                                                  const PartialOrder& ord,
                                                  bool positive_only);

// O(1) pre-filter for pairs with all-positive depth sequences: when the first
// symbols or the last symbols are unordered, the relation cannot hold and
// this returns false. True is inconclusive.
bool endpoint_necessity(const IndexedPair& p1, const IndexedPair& p2,
                        const PartialOrder& ord);

// Order over composite device symbols "(i,j,...)" (1-based coordinates, one
// per axis): a <= b iff every coordinate of b is <= the matching coordinate
// of a. Lower coordinates activate more devices, hence the reversal.
PartialOrder product_order(std::span<const int> axes);

Sym product_symbol(std::span<const int> coords);

struct OrderSubsetCheck {
    bool ok = true;
    IndexedPair left, right;  // counterexample when !ok
};

// Samples indexed pairs and checks that dominance under the smaller order
// implies dominance under the larger one. Requires ord1 to be a subset of
// ord2; a false result would indicate an implementation bug.
OrderSubsetCheck order_subset_property_check(const PartialOrder& ord1,
                                             const PartialOrder& ord2,
                                             const GenerativeCondition& gc,
                                             int samples, std::uint64_t seed);

}  // namespace rlub
