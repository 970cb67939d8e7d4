#include "lmk/complex.hpp"

#include <algorithm>
#include <bit>

namespace lmk {

namespace {

std::vector<index_t> intersect_sorted(const std::vector<index_t>& a,
                                      const std::vector<index_t>& b) {
    std::vector<index_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Rank over GF(2) of a boundary matrix given as columns of sorted row
// indices, by column elimination on 64-bit word bitsets.
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> columns) {
    std::vector<std::size_t> pivot_of_column;
    std::vector<long> pivot_row;  // parallel: lowest set bit of each reduced column
    std::size_t rank = 0;
    for (auto& col : columns) {
        long low = -1;
        auto lowest = [&](const std::vector<std::uint64_t>& c) -> long {
            for (std::size_t w = 0; w < c.size(); ++w)
                if (c[w]) return static_cast<long>(w * 64 + std::countr_zero(c[w]));
            return -1;
        };
        low = lowest(col);
        while (low >= 0) {
            bool reduced = false;
            for (std::size_t p = 0; p < pivot_row.size(); ++p) {
                if (pivot_row[p] == low) {
                    const auto& other = columns[pivot_of_column[p]];
                    for (std::size_t w = 0; w < col.size(); ++w) col[w] ^= other[w];
                    low = lowest(col);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) break;
        }
        if (low >= 0) {
            pivot_of_column.push_back(static_cast<std::size_t>(&col - columns.data()));
            pivot_row.push_back(low);
            ++rank;
        }
    }
    return rank;
}

}  // namespace

SimplicialComplex nerve(const Cover& cover, std::size_t dim_cap) {
    require(!cover.sets.empty(), errc::empty_cover, "nerve of an empty cover");
    for (const auto& s : cover.sets)
        require(!s.empty(), errc::empty_cover, "nerve of a cover with an empty set");
    require(dim_cap >= 1, errc::insufficient_dim_cap, "dim_cap must be >= 1");

    const std::size_t m = cover.sets.size();
    SimplicialComplex complex;
    complex.vertices = m;
    complex.dim_cap = dim_cap;
    complex.simplices.resize(dim_cap + 1);

    for (std::uint32_t v = 0; v < m; ++v) complex.simplices[0].push_back({v});

    // Overlap graph; edges stored as adjacency-above lists for clique growth.
    std::vector<std::vector<std::uint32_t>> above(m);
    std::vector<std::vector<index_t>> edge_overlap;
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = i + 1; j < m; ++j) {
            auto common = intersect_sorted(cover.sets[i], cover.sets[j]);
            if (!common.empty()) {
                above[i].push_back(j);
                complex.simplices[1].push_back({i, j});
                edge_overlap.push_back(std::move(common));
            }
        }
    }

    // Grow (d+1)-simplices from d-simplices by appending a vertex adjacent
    // (in the overlap graph) to every member; the running intersection of
    // each simplex is carried along so only one further intersection is
    // needed per extension.
    std::vector<std::vector<index_t>> frontier_overlap = edge_overlap;
    for (std::size_t dim = 1; dim + 1 <= dim_cap; ++dim) {
        const auto& frontier = complex.simplices[dim];
        if (frontier.empty()) break;
        std::vector<std::vector<index_t>> next_overlap;
        for (std::size_t s = 0; s < frontier.size(); ++s) {
            const auto& simplex = frontier[s];
            const std::uint32_t last = simplex.back();
            for (std::uint32_t v : above[last]) {
                bool adjacent = true;
                for (std::uint32_t u : simplex) {
                    if (u == last) break;
                    if (!std::binary_search(above[u].begin(), above[u].end(), v)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                auto common = intersect_sorted(frontier_overlap[s], cover.sets[v]);
                if (common.empty()) continue;
                auto extended = simplex;
                extended.push_back(v);
                complex.simplices[dim + 1].push_back(std::move(extended));
                next_overlap.push_back(std::move(common));
            }
        }
        frontier_overlap = std::move(next_overlap);
    }
    return complex;
}

BettiVector betti(const SimplicialComplex& complex, std::size_t max_dim) {
    require(max_dim < complex.dim_cap, errc::insufficient_dim_cap,
            "betti needs boundaries one dimension above max_dim");

    // Boundary ranks per dimension; rank of the empty matrix is 0.
    static const std::vector<std::vector<std::uint32_t>> kNoSimplices;
    std::vector<std::size_t> ranks(max_dim + 2, 0);
    for (std::size_t dim = 1; dim <= max_dim + 1; ++dim) {
        const auto& faces =
            dim - 1 < complex.simplices.size() ? complex.simplices[dim - 1] : kNoSimplices;
        const auto& cells =
            dim < complex.simplices.size() ? complex.simplices[dim] : kNoSimplices;
        if (cells.empty()) {
            ranks[dim] = 0;
            continue;
        }
        std::vector<std::vector<std::uint32_t>> sorted_faces = faces;
        std::sort(sorted_faces.begin(), sorted_faces.end());
        const std::size_t words = (faces.size() + 63) / 64;
        std::vector<std::vector<std::uint64_t>> columns;
        columns.reserve(cells.size());
        for (const auto& cell : cells) {
            std::vector<std::uint64_t> col(words, 0);
            std::vector<std::uint32_t> face(cell.size() - 1);
            for (std::size_t drop = 0; drop < cell.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < cell.size(); ++i)
                    if (i != drop) face[w++] = cell[i];
                const auto it =
                    std::lower_bound(sorted_faces.begin(), sorted_faces.end(), face);
                require(it != sorted_faces.end() && *it == face, errc::insufficient_dim_cap,
                        "complex is not downward closed");
                const std::size_t row = static_cast<std::size_t>(it - sorted_faces.begin());
                col[row / 64] ^= 1ULL << (row % 64);
            }
            columns.push_back(std::move(col));
        }
        ranks[dim] = gf2_rank(std::move(columns));
    }

    BettiVector out(max_dim + 1, 0);
    for (std::size_t dim = 0; dim <= max_dim; ++dim) {
        const std::size_t cells = complex.count(dim);
        out[dim] = cells - ranks[dim] - ranks[dim + 1];
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

SweepSummary landmark_persistence_sweep(const DissimilaritySpace& space, SamplerConfig config,
                                        const BettiVector& target, const SweepParams& params) {
    const auto part = colocation(space);
    require(params.m_max >= 1 && params.m_max <= part.uniq(), errc::config,
            "sweep range exceeds the number of distinguishable points");
    require(target.size() >= 2, errc::config, "sweep target needs beta_0 and beta_1");

    SweepSummary summary;
    std::vector<double> lengths;
    for (std::size_t r = 0; r < params.replicates; ++r) {
        SamplerConfig run = config;
        run.rng_seed = config.rng_seed + r;
        run.seed_rule = SeedRule::random;
        run.num_landmarks = params.m_max;
        run.cardinality.reset();
        run.radius.reset();
        const auto result = generate_landmarks(space, run);

        PersistenceSweep sweep;
        sweep.target = target;
        for (std::size_t m = 1; m <= result.landmarks.size(); ++m) {
            const auto cover = build_prefix_cover(space, result, m, params.kind, params.ext_mult,
                                                  params.ext_add, config.rank_variant);
            const auto complex = nerve(cover, params.dim_cap);
            auto b = betti(complex, params.dim_cap - 1);
            sweep.per_m.emplace_back(m, std::move(b));
        }

        // Longest run of consecutive m matching the target in dims 0 and 1.
        std::size_t best_lo = 0, best_hi = 0, lo = 0;
        for (const auto& [m, b] : sweep.per_m) {
            const bool match = b[0] == target[0] && b[1] == target[1];
            if (match) {
                if (lo == 0) lo = m;
                if (best_lo == 0 || m - lo > best_hi - best_lo) {
                    best_lo = lo;
                    best_hi = m;
                }
            } else {
                lo = 0;
            }
        }
        sweep.dominance_lo = best_lo;
        sweep.dominance_hi = best_hi;
        lengths.push_back(static_cast<double>(sweep.length()));
        summary.replicates.push_back(std::move(sweep));
    }
    summary.median_dominance = median(std::move(lengths));
    return summary;
}

}  // namespace lmk
