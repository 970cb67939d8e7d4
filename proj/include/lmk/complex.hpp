#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lmk/landmark.hpp"

namespace lmk {

/// Simplices up to dim_cap, downward closed, each stored as a strictly
/// increasing vertex tuple. simplices[d] lists the d-simplices.
struct SimplicialComplex {
    std::size_t vertices = 0;
    std::size_t dim_cap = 0;
    std::vector<std::vector<std::vector<std::uint32_t>>> simplices;

    std::size_t count(std::size_t dim) const {
        return dim < simplices.size() ? simplices[dim].size() : 0;
    }
};

using BettiVector = std::vector<std::size_t>;

/// Nerve of a cover: one vertex per set, a j-simplex per (j+1) sets with a
/// common point, up to dimension dim_cap. Cliques of the overlap graph are
/// grown incrementally, intersecting only within established faces.
SimplicialComplex nerve(const Cover& cover, std::size_t dim_cap);

/// Betti numbers beta_0..beta_max_dim over the two-element field, from the
/// ranks of the boundary matrices. Requires max_dim < dim_cap so that the
/// boundary from dimension max_dim + 1 is available.
BettiVector betti(const SimplicialComplex& complex, std::size_t max_dim);

struct PersistenceSweep {
    std::vector<std::pair<std::size_t, BettiVector>> per_m;
    BettiVector target;
    // Maximal run of consecutive m whose (beta_0, beta_1) match the target;
    // empty() when no m matches.
    std::size_t dominance_lo = 0;
    std::size_t dominance_hi = 0;

    bool empty() const { return dominance_hi < dominance_lo || dominance_lo == 0; }
    std::size_t length() const { return empty() ? 0 : dominance_hi - dominance_lo + 1; }
};

struct SweepParams {
    std::size_t m_max = 0;
    std::size_t replicates = 1;
    double ext_mult = 0.0;
    double ext_add = 0.0;
    std::size_t dim_cap = 3;
    CoverKind kind = CoverKind::ball;
};

struct SweepSummary {
    std::vector<PersistenceSweep> replicates;
    double median_dominance = 0.0;
};

/// For each replicate, runs the configured sampler to m_max landmarks from
/// a random seed point, then for every prefix m builds the cover at the
/// prefix covering parameter (extensions applied afterwards), takes its
/// nerve, and records Betti numbers. Replicate r uses rng stream
/// config.rng_seed + r.
SweepSummary landmark_persistence_sweep(const DissimilaritySpace& space, SamplerConfig config,
                                        const BettiVector& target, const SweepParams& params);

double median(std::vector<double> values);

}  // namespace lmk
