#include "lmk/rank.hpp"

#include <algorithm>

namespace lmk {

namespace {

std::vector<index_t> all_indices(std::size_t n) {
    std::vector<index_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

std::size_t out_rank(const DissimilaritySpace& space, RankVariant variant, index_t x, index_t y) {
    const std::size_t n = space.size();
    require(x < n && y < n, errc::index_out_of_bounds, "rank index out of range");
    const double dxy = space.dissim(x, y);
    std::size_t count = 0;
    if (variant == RankVariant::check) {
        for (std::size_t z = 0; z < n; ++z)
            if (space.dissim(x, z) < dxy) ++count;
    } else {
        for (std::size_t z = 0; z < n; ++z)
            if (space.dissim(x, z) <= dxy) ++count;
    }
    return count;
}

std::vector<std::size_t> rank_row(const DissimilaritySpace& space, RankVariant variant,
                                  index_t x) {
    const std::size_t n = space.size();
    require(x < n, errc::index_out_of_bounds, "rank source out of range");
    std::vector<double> dist(n);
    space.dissim_row(x, dist.data());
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> ranks(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (variant == RankVariant::check)
            ranks[t] = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), dist[t]) - sorted.begin());
        else
            ranks[t] = static_cast<std::size_t>(
                std::upper_bound(sorted.begin(), sorted.end(), dist[t]) - sorted.begin());
    }
    return ranks;
}

std::vector<index_t> k_neighborhood(const DissimilaritySpace& space, RankVariant variant,
                                    Direction dir, index_t x, std::size_t k) {
    const std::size_t n = space.size();
    require(x < n, errc::index_out_of_bounds, "neighborhood center out of range");
    std::vector<index_t> members;
    if (dir == Direction::out) {
        const auto ranks = rank_row(space, variant, x);
        for (std::size_t y = 0; y < n; ++y)
            if (ranks[y] <= k) members.push_back(y);
    } else {
        for (std::size_t y = 0; y < n; ++y)
            if (out_rank(space, variant, y, x) <= k) members.push_back(y);
    }
    return members;
}

std::vector<index_t> nearest_neighborhood(const DissimilaritySpace& space, index_t x,
                                          std::size_t k) {
    require(k >= 1, errc::index_out_of_bounds, "nearest neighborhood needs k >= 1");
    return k_neighborhood(space, RankVariant::check, Direction::out, x, k - 1);
}

RankSequence rank_sequence(const DissimilaritySpace& space, RankVariant variant, Direction dir,
                           index_t x, const std::vector<index_t>& restrict_to) {
    const std::size_t n = space.size();
    require(x < n, errc::index_out_of_bounds, "sequence source out of range");

    // Full-space rank of each restricted member, then a cumulative
    // histogram: entry k counts members with rank <= k (check) or
    // rank <= k+1 (hat, since hat sequences start at k = 1).
    std::vector<std::size_t> ranks;
    ranks.reserve(restrict_to.size());
    if (dir == Direction::out) {
        const auto row = rank_row(space, variant, x);
        for (index_t y : restrict_to) {
            require(y < space.size(), errc::index_out_of_bounds, "restriction out of range");
            ranks.push_back(row[y]);
        }
    } else {
        for (index_t y : restrict_to) ranks.push_back(out_rank(space, variant, y, x));
    }

    RankSequence seq;
    seq.values.assign(n, 0);
    const std::size_t offset = variant == RankVariant::hat ? 1 : 0;
    for (std::size_t r : ranks) {
        const std::size_t slot = r < offset ? 0 : r - offset;
        if (slot < n) ++seq.values[slot];
    }
    std::size_t running = 0;
    for (std::size_t k = 0; k < n; ++k) {
        running += seq.values[k];
        seq.values[k] = running;
    }
    return seq;
}

RankSequence rank_sequence(const DissimilaritySpace& space, RankVariant variant, Direction dir,
                           index_t x) {
    return rank_sequence(space, variant, dir, x, all_indices(space.size()));
}

int revlex_compare(const RankSequence& a, const RankSequence& b) {
    require(a.values.size() == b.values.size(), errc::length_mismatch,
            "rank sequences have different lengths");
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != b.values[i]) return a.values[i] > b.values[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace lmk
