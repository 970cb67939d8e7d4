#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "lmk/space.hpp"

namespace lmk {

/// Tie-handling variants for ordinal ranks derived from a dissimilarity.
///
/// check: q(x,y) = |{z : d(x,z) < d(x,y)}| -- the number of points strictly
///        nearer to x than y is; q(x,x) = 0.
/// hat:   q(x,y) = |{z : d(x,z) <= d(x,y)}| -- the cardinality of the
///        smallest closed ball about x containing y; q(x,x) = |class(x)|.
enum class RankVariant { check, hat };

enum class Direction { out, in };

/// Rank of y relative to x (out-rank). The in-rank is out_rank with the
/// arguments swapped.
std::size_t out_rank(const DissimilaritySpace& space, RankVariant variant, index_t x, index_t y);

/// Out-ranks from x to every point, computed in one pass (O(n log n)).
std::vector<std::size_t> rank_row(const DissimilaritySpace& space, RankVariant variant, index_t x);

/// k-neighborhood by rank bound: out gives {y : q(x,y) <= k}, in gives
/// {y : q(y,x) <= k}. Members returned ascending.
///
/// The cardinality-style k-nearest neighborhood (smallest closed ball about
/// x holding at least k points) is the same set as
/// k_neighborhood(check, out, x, k - 1); see nearest_neighborhood.
std::vector<index_t> k_neighborhood(const DissimilaritySpace& space, RankVariant variant,
                                    Direction dir, index_t x, std::size_t k);

/// Smallest closed ball about x containing at least k points (k >= 1).
std::vector<index_t> nearest_neighborhood(const DissimilaritySpace& space, index_t x,
                                          std::size_t k);

/// Counting sequence of neighborhood sizes. Under check the entries are
/// |N_0|, ..., |N_{M-1}|; under hat they are |N_1|, ..., |N_M| (hat ranks
/// start at 1). M = space size regardless of the restriction. Restriction
/// filters membership only -- N_k(x, Y) = Y intersected with N_k(x) -- so
/// ranks are always taken in the full space and the final entries saturate
/// at |restrict|.
struct RankSequence {
    std::vector<std::size_t> values;

    auto operator<=>(const RankSequence&) const = default;
};

RankSequence rank_sequence(const DissimilaritySpace& space, RankVariant variant, Direction dir,
                           index_t x);
RankSequence rank_sequence(const DissimilaritySpace& space, RankVariant variant, Direction dir,
                           index_t x, const std::vector<index_t>& restrict_to);

/// Reverse-lexicographic comparison: a < b iff at the first differing
/// position a exceeds b. Returns <0, 0, >0 like a three-way compare.
int revlex_compare(const RankSequence& a, const RankSequence& b);

}  // namespace lmk
