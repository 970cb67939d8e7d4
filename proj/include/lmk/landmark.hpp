#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lmk/rank.hpp"
#include "lmk/rng.hpp"
#include "lmk/space.hpp"

namespace lmk {

enum class Procedure { maxmin, lastfirst, random_sample };
enum class SeedRule { first_index, random, chebyshev };
enum class TieRule { first_index, random, iterative_refinement };

struct SamplerConfig {
    Procedure procedure = Procedure::maxmin;
    // At least one of num_landmarks / radius (maxmin) or num_landmarks /
    // cardinality (lastfirst) must be set. Giving both yields a thickened
    // cover: at least num_landmarks landmarks and sets at the given size.
    std::optional<std::size_t> num_landmarks;
    std::optional<double> radius;           // maxmin stopping radius
    std::optional<std::size_t> cardinality; // lastfirst stopping cardinality
    SeedRule seed_rule = SeedRule::first_index;
    TieRule tie_rule = TieRule::first_index;
    std::uint64_t rng_seed = 0;
    RankVariant rank_variant = RankVariant::check;
    std::optional<index_t> seed_point;  // explicit seed overrides seed_rule
};

struct LandmarkStep {
    index_t landmark;
    // Covering radius of the landmark prefix ending at this step; the
    // minimum eps such that closed balls of radius eps about the prefix
    // cover the space.
    double radius;
    // Covering cardinality of the prefix (minimum rank bound k such that
    // the k-neighborhoods about the prefix cover the space). Recorded for
    // lastfirst and random procedures; absent for maxmin, which never
    // computes ranks.
    std::optional<std::size_t> cardinality;
};

struct LandmarkResult {
    Procedure procedure = Procedure::maxmin;
    RankVariant rank_variant = RankVariant::check;
    std::vector<index_t> landmarks;
    std::vector<LandmarkStep> per_step;
    // Cover parameters at termination. When the stopping radius or
    // cardinality was prescribed, that value is kept here (it may exceed
    // the realized per-step value, giving a thicker cover).
    double final_radius = 0.0;
    std::optional<std::size_t> final_cardinality;
};

/// Points of X \ cl(Y) at maximal distance from Y, balls growing outward
/// from Y (d(y, x)). Empty when cl(Y) = X.
std::vector<index_t> maxmin_set(const DissimilaritySpace& space, const std::vector<index_t>& y);

/// Minimum eps such that closed outward balls about Y cover X.
double covering_radius(const DissimilaritySpace& space, const std::vector<index_t>& y);

/// Minimum rank bound k such that the k-neighborhoods about Y cover X,
/// i.e. max over x of min over y of q(y, x).
std::size_t covering_cardinality(const DissimilaritySpace& space, const std::vector<index_t>& y,
                                 RankVariant variant = RankVariant::check);

/// Points of X \ cl(Y) still uncovered at rank K(Y,X) - 1; the rank
/// analogue of maxmin_set. Empty when cl(Y) = X.
std::vector<index_t> lastfirst_set(const DissimilaritySpace& space, const std::vector<index_t>& y,
                                   RankVariant variant = RankVariant::check);

/// Resolves a tie among candidates. first_index and random ignore the
/// history. iterative_refinement keeps the candidates farthest from their
/// second-nearest landmark, then third-nearest, and so on (distances when
/// the history is a maxmin run, ranks otherwise), falling back to the
/// smallest index if ties survive the whole history.
index_t select(const DissimilaritySpace& space, TieRule rule,
               const std::vector<index_t>& candidates, const std::vector<index_t>& history,
               Procedure procedure, RankVariant variant, Rng& rng);

/// Seed candidates for the chebyshev rule: eccentricity minimizers for
/// maxmin; revlex-minimal self-excluded out-rank sequences for lastfirst
/// (centers of maximally populated neighborhoods).
std::vector<index_t> maxmin_seed_candidates(const DissimilaritySpace& space);
std::vector<index_t> lastfirst_seed_candidates(const DissimilaritySpace& space,
                                               RankVariant variant = RankVariant::check);

index_t seed(const DissimilaritySpace& space, SeedRule rule, Procedure procedure,
             RankVariant variant, Rng& rng);

LandmarkResult maxmin_landmarks(const DissimilaritySpace& space, const SamplerConfig& config);
LandmarkResult lastfirst_landmarks(const DissimilaritySpace& space, const SamplerConfig& config);
LandmarkResult random_landmarks(const DissimilaritySpace& space, const SamplerConfig& config);
LandmarkResult generate_landmarks(const DissimilaritySpace& space, const SamplerConfig& config);

enum class CoverKind { ball, neighborhood };

/// Cover of the space by sets centered at landmarks: closed balls of a
/// common radius or neighborhoods of a common rank bound, optionally
/// enlarged by multiplicative factor a and additive offset b (radius
/// eps(1+a)+b, cardinality ceil(k(1+a))+b). Fuzzy membership splits each
/// point equally across the sets containing it.
struct Cover {
    CoverKind kind = CoverKind::ball;
    std::vector<std::vector<index_t>> sets;
    std::vector<std::vector<std::uint32_t>> sets_of_point;
    double ext_mult = 0.0;
    double ext_add = 0.0;
    double effective_param = 0.0;

    std::size_t num_points() const { return sets_of_point.size(); }
    double membership(index_t point, std::size_t set) const;
};

Cover build_cover(const DissimilaritySpace& space, const LandmarkResult& result, CoverKind kind,
                  double ext_mult = 0.0, double ext_add = 0.0,
                  RankVariant variant = RankVariant::check);

/// Cover from the first m landmarks at the m-prefix covering parameter.
Cover build_prefix_cover(const DissimilaritySpace& space, const LandmarkResult& result,
                         std::size_t m, CoverKind kind, double ext_mult = 0.0,
                         double ext_add = 0.0, RankVariant variant = RankVariant::check);

/// Raw cover sets at an explicit parameter; no coverage guarantee. Used by
/// minimality checks and the persistence sweep.
std::vector<std::vector<index_t>> ball_cover_sets(const DissimilaritySpace& space,
                                                  const std::vector<index_t>& landmarks,
                                                  double radius);
std::vector<std::vector<index_t>> neighborhood_cover_sets(const DissimilaritySpace& space,
                                                          const std::vector<index_t>& landmarks,
                                                          double rank_bound,
                                                          RankVariant variant = RankVariant::check);

}  // namespace lmk
