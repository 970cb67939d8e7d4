#include "lmk/landmark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lmk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Progressive lex-max filter over per-candidate key vectors (ascending
// sorted distances or ranks to the landmark prefix): keep the candidates
// whose j-th smallest key is maximal, advancing j until a single candidate
// or the end of the prefix is reached.
template <typename KeyFn>
std::vector<index_t> refine_lex_max(std::vector<index_t> current, std::size_t depth,
                                    KeyFn&& key_at) {
    for (std::size_t j = 0; j < depth && current.size() > 1; ++j) {
        auto best = key_at(current.front(), j);
        for (std::size_t c = 1; c < current.size(); ++c)
            best = std::max(best, key_at(current[c], j));
        std::vector<index_t> kept;
        for (index_t y : current)
            if (key_at(y, j) == best) kept.push_back(y);
        current = std::move(kept);
    }
    return current;
}

// Shared incremental state for the greedy samplers. min_dist holds the
// outward distance from the landmark prefix to each point and min_rank the
// least rank from any landmark; the full sorted rank rows (the sorted-row
// bookkeeping of the lastfirst algorithm) are kept only when the
// refinement tie rule needs them, since their upkeep is O(n |L|).
struct GreedyState {
    const DissimilaritySpace& space;
    const ColocationPartition& part;
    RankVariant variant;
    bool track_ranks;
    bool track_full_rows;

    std::vector<index_t> landmarks;
    std::vector<char> class_used;
    std::size_t classes_used = 0;
    std::vector<double> min_dist;
    std::vector<std::size_t> min_rank;
    std::vector<std::vector<std::size_t>> rank_rows;
    std::vector<double> dist_buffer;

    GreedyState(const DissimilaritySpace& s, const ColocationPartition& p, RankVariant v,
                bool ranks, bool full_rows)
        : space(s), part(p), variant(v), track_ranks(ranks), track_full_rows(ranks && full_rows) {
        const std::size_t n = s.size();
        class_used.assign(p.uniq(), 0);
        min_dist.assign(n, kInf);
        if (track_ranks) min_rank.assign(n, std::numeric_limits<std::size_t>::max());
        if (track_full_rows) rank_rows.assign(n, {});
        dist_buffer.resize(n);
    }

    bool exhausted() const { return classes_used == part.uniq(); }
    bool remaining(index_t x) const { return !class_used[part.class_of[x]]; }

    void add_landmark(index_t l) {
        landmarks.push_back(l);
        if (!class_used[part.class_of[l]]) {
            class_used[part.class_of[l]] = 1;
            ++classes_used;
        }
        space.dissim_row(l, dist_buffer.data());
        for (std::size_t x = 0; x < min_dist.size(); ++x)
            min_dist[x] = std::min(min_dist[x], dist_buffer[x]);
        if (track_ranks) {
            std::vector<double> sorted = dist_buffer;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t x = 0; x < min_rank.size(); ++x) {
                std::size_t r;
                if (variant == RankVariant::check)
                    r = static_cast<std::size_t>(
                        std::lower_bound(sorted.begin(), sorted.end(), dist_buffer[x]) -
                        sorted.begin());
                else
                    r = static_cast<std::size_t>(
                        std::upper_bound(sorted.begin(), sorted.end(), dist_buffer[x]) -
                        sorted.begin());
                min_rank[x] = std::min(min_rank[x], r);
                if (track_full_rows) {
                    auto& row = rank_rows[x];
                    row.insert(std::upper_bound(row.begin(), row.end(), r), r);
                }
            }
        }
    }

    double current_radius() const {
        double eps = 0.0;
        for (double d : min_dist) eps = std::max(eps, d);
        return eps;
    }

    std::size_t current_cardinality() const {
        std::size_t k = 0;
        for (std::size_t r : min_rank) k = std::max(k, r);
        return k;
    }

    // Maxmin set over the remaining classes: argmax of min_dist.
    std::vector<index_t> distance_candidates() const {
        double best = -1.0;
        for (std::size_t x = 0; x < min_dist.size(); ++x)
            if (remaining(x)) best = std::max(best, min_dist[x]);
        std::vector<index_t> out;
        for (std::size_t x = 0; x < min_dist.size(); ++x)
            if (remaining(x) && min_dist[x] == best) out.push_back(x);
        return out;
    }

    // Lastfirst set over the remaining classes: argmax of the minimal rank.
    std::vector<index_t> rank_candidates() const {
        std::size_t best = 0;
        bool any = false;
        for (std::size_t x = 0; x < min_rank.size(); ++x)
            if (remaining(x)) {
                best = any ? std::max(best, min_rank[x]) : min_rank[x];
                any = true;
            }
        std::vector<index_t> out;
        for (std::size_t x = 0; x < min_rank.size(); ++x)
            if (remaining(x) && min_rank[x] == best) out.push_back(x);
        return out;
    }

    index_t pick(TieRule rule, const std::vector<index_t>& candidates, Rng& rng) const {
        require(!candidates.empty(), errc::empty_candidates, "no candidates to select from");
        switch (rule) {
            case TieRule::first_index:
                return *std::min_element(candidates.begin(), candidates.end());
            case TieRule::random:
                return candidates[rng.uniform_index(candidates.size())];
            case TieRule::iterative_refinement:
                break;
        }
        std::vector<index_t> refined;
        if (track_full_rows) {
            refined = refine_lex_max(candidates, landmarks.size(),
                                     [&](index_t y, std::size_t j) { return rank_rows[y][j]; });
        } else if (track_ranks) {
            // Rank keys recomputed for the few candidates.
            std::vector<std::vector<std::size_t>> keys(candidates.size());
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                for (index_t l : landmarks)
                    keys[c].push_back(out_rank(space, variant, l, candidates[c]));
                std::sort(keys[c].begin(), keys[c].end());
            }
            std::vector<index_t> slots(candidates.size());
            for (std::size_t c = 0; c < slots.size(); ++c) slots[c] = c;
            slots = refine_lex_max(slots, landmarks.size(),
                                   [&](index_t c, std::size_t j) { return keys[c][j]; });
            refined.reserve(slots.size());
            for (index_t c : slots) refined.push_back(candidates[c]);
        } else {
            // Sorted distance vectors computed on demand; candidates are few.
            std::vector<std::vector<double>> keys(candidates.size());
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                keys[c].reserve(landmarks.size());
                for (index_t l : landmarks) keys[c].push_back(space.dissim(l, candidates[c]));
                std::sort(keys[c].begin(), keys[c].end());
            }
            std::vector<index_t> slots(candidates.size());
            for (std::size_t c = 0; c < slots.size(); ++c) slots[c] = c;
            slots = refine_lex_max(slots, landmarks.size(),
                                   [&](index_t c, std::size_t j) { return keys[c][j]; });
            refined.reserve(slots.size());
            for (index_t c : slots) refined.push_back(candidates[c]);
        }
        return *std::min_element(refined.begin(), refined.end());
    }
};

void record_step(LandmarkResult& result, const GreedyState& state) {
    LandmarkStep step;
    step.landmark = state.landmarks.back();
    step.radius = state.current_radius();
    if (state.track_ranks) step.cardinality = state.current_cardinality();
    result.per_step.push_back(step);
}

index_t resolve_seed(const DissimilaritySpace& space, const SamplerConfig& config,
                     Procedure procedure, Rng& rng) {
    if (config.seed_point) {
        require(*config.seed_point < space.size(), errc::index_out_of_bounds,
                "seed point out of range");
        return *config.seed_point;
    }
    return seed(space, config.seed_rule, procedure, config.rank_variant, rng);
}

}  // namespace

std::vector<index_t> maxmin_set(const DissimilaritySpace& space, const std::vector<index_t>& y) {
    require(!y.empty(), errc::empty_input, "maxmin set of an empty landmark set");
    const std::size_t n = space.size();
    std::vector<double> min_dist(n, kInf);
    std::vector<double> row(n);
    for (index_t l : y) {
        require(l < n, errc::index_out_of_bounds, "landmark index out of range");
        space.dissim_row(l, row.data());
        for (std::size_t x = 0; x < n; ++x) min_dist[x] = std::min(min_dist[x], row[x]);
    }
    const auto closure = colocation_closure(space, y);
    std::vector<char> in_closure(n, 0);
    for (index_t i : closure) in_closure[i] = 1;

    double best = -1.0;
    for (std::size_t x = 0; x < n; ++x)
        if (!in_closure[x]) best = std::max(best, min_dist[x]);
    std::vector<index_t> out;
    for (std::size_t x = 0; x < n; ++x)
        if (!in_closure[x] && min_dist[x] == best) out.push_back(x);
    return out;
}

double covering_radius(const DissimilaritySpace& space, const std::vector<index_t>& y) {
    require(!y.empty(), errc::empty_input, "covering radius of an empty landmark set");
    const std::size_t n = space.size();
    std::vector<double> min_dist(n, kInf);
    std::vector<double> row(n);
    for (index_t l : y) {
        require(l < n, errc::index_out_of_bounds, "landmark index out of range");
        space.dissim_row(l, row.data());
        for (std::size_t x = 0; x < n; ++x) min_dist[x] = std::min(min_dist[x], row[x]);
    }
    return *std::max_element(min_dist.begin(), min_dist.end());
}

std::size_t covering_cardinality(const DissimilaritySpace& space, const std::vector<index_t>& y,
                                 RankVariant variant) {
    require(!y.empty(), errc::empty_input, "covering cardinality of an empty landmark set");
    const std::size_t n = space.size();
    std::vector<std::size_t> min_rank(n, std::numeric_limits<std::size_t>::max());
    for (index_t l : y) {
        require(l < n, errc::index_out_of_bounds, "landmark index out of range");
        const auto ranks = rank_row(space, variant, l);
        for (std::size_t x = 0; x < n; ++x) min_rank[x] = std::min(min_rank[x], ranks[x]);
    }
    return *std::max_element(min_rank.begin(), min_rank.end());
}

std::vector<index_t> lastfirst_set(const DissimilaritySpace& space, const std::vector<index_t>& y,
                                   RankVariant variant) {
    require(!y.empty(), errc::empty_input, "lastfirst set of an empty landmark set");
    const std::size_t n = space.size();
    std::vector<std::size_t> min_rank(n, std::numeric_limits<std::size_t>::max());
    for (index_t l : y) {
        require(l < n, errc::index_out_of_bounds, "landmark index out of range");
        const auto ranks = rank_row(space, variant, l);
        for (std::size_t x = 0; x < n; ++x) min_rank[x] = std::min(min_rank[x], ranks[x]);
    }
    const auto closure = colocation_closure(space, y);
    std::vector<char> in_closure(n, 0);
    for (index_t i : closure) in_closure[i] = 1;

    bool any = false;
    std::size_t best = 0;
    for (std::size_t x = 0; x < n; ++x)
        if (!in_closure[x]) {
            best = any ? std::max(best, min_rank[x]) : min_rank[x];
            any = true;
        }
    std::vector<index_t> out;
    if (!any) return out;
    for (std::size_t x = 0; x < n; ++x)
        if (!in_closure[x] && min_rank[x] == best) out.push_back(x);
    return out;
}

index_t select(const DissimilaritySpace& space, TieRule rule,
               const std::vector<index_t>& candidates, const std::vector<index_t>& history,
               Procedure procedure, RankVariant variant, Rng& rng) {
    require(!candidates.empty(), errc::empty_candidates, "selection from empty candidate set");
    switch (rule) {
        case TieRule::first_index:
            return *std::min_element(candidates.begin(), candidates.end());
        case TieRule::random:
            return candidates[rng.uniform_index(candidates.size())];
        case TieRule::iterative_refinement:
            break;
    }
    if (history.empty()) return *std::min_element(candidates.begin(), candidates.end());

    std::vector<index_t> refined;
    if (procedure == Procedure::lastfirst) {
        std::vector<std::vector<std::size_t>> keys(candidates.size());
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            for (index_t l : history)
                keys[c].push_back(out_rank(space, variant, l, candidates[c]));
            std::sort(keys[c].begin(), keys[c].end());
        }
        std::vector<index_t> slots(candidates.size());
        for (std::size_t c = 0; c < slots.size(); ++c) slots[c] = c;
        slots = refine_lex_max(slots, history.size(),
                               [&](index_t c, std::size_t j) { return keys[c][j]; });
        for (index_t c : slots) refined.push_back(candidates[c]);
    } else {
        std::vector<std::vector<double>> keys(candidates.size());
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            for (index_t l : history) keys[c].push_back(space.dissim(l, candidates[c]));
            std::sort(keys[c].begin(), keys[c].end());
        }
        std::vector<index_t> slots(candidates.size());
        for (std::size_t c = 0; c < slots.size(); ++c) slots[c] = c;
        slots = refine_lex_max(slots, history.size(),
                               [&](index_t c, std::size_t j) { return keys[c][j]; });
        for (index_t c : slots) refined.push_back(candidates[c]);
    }
    return *std::min_element(refined.begin(), refined.end());
}

std::vector<index_t> maxmin_seed_candidates(const DissimilaritySpace& space) {
    const std::size_t n = space.size();
    require(n > 0, errc::empty_space, "seed of an empty space");
    std::vector<double> row(n);
    double best = kInf;
    std::vector<double> ecc(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        space.dissim_row(x, row.data());
        double e = 0.0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) e = std::max(e, row[y]);
        ecc[x] = e;
        best = std::min(best, e);
    }
    std::vector<index_t> out;
    for (std::size_t x = 0; x < n; ++x)
        if (ecc[x] == best) out.push_back(x);
    return out;
}

std::vector<index_t> lastfirst_seed_candidates(const DissimilaritySpace& space,
                                               RankVariant variant) {
    const std::size_t n = space.size();
    require(n > 0, errc::empty_space, "seed of an empty space");
    std::vector<RankSequence> seqs(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<index_t> others;
        others.reserve(n - 1);
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) others.push_back(y);
        if (others.empty())
            seqs[x] = RankSequence{std::vector<std::size_t>(n, 0)};
        else
            seqs[x] = rank_sequence(space, variant, Direction::out, x, others);
    }
    std::vector<index_t> out{0};
    for (std::size_t x = 1; x < n; ++x) {
        const int cmp = revlex_compare(seqs[x], seqs[out.front()]);
        if (cmp < 0)
            out.assign(1, x);
        else if (cmp == 0)
            out.push_back(x);
    }
    return out;
}

index_t seed(const DissimilaritySpace& space, SeedRule rule, Procedure procedure,
             RankVariant variant, Rng& rng) {
    require(space.size() > 0, errc::empty_space, "seed of an empty space");
    switch (rule) {
        case SeedRule::first_index:
            return 0;
        case SeedRule::random:
            return static_cast<index_t>(rng.uniform_index(space.size()));
        case SeedRule::chebyshev:
            break;
    }
    const auto candidates = procedure == Procedure::lastfirst
                                ? lastfirst_seed_candidates(space, variant)
                                : maxmin_seed_candidates(space);
    return candidates.front();
}

LandmarkResult maxmin_landmarks(const DissimilaritySpace& space, const SamplerConfig& config) {
    require(config.num_landmarks.has_value() || config.radius.has_value(), errc::config,
            "maxmin needs a landmark count or a radius");
    if (config.num_landmarks)
        require(*config.num_landmarks >= 1, errc::config, "landmark count must be >= 1");
    if (config.radius)
        require(*config.radius >= 0.0, errc::config, "radius must be nonnegative");

    const auto part = colocation(space);
    Rng seed_rng = Rng(config.rng_seed).split(0);
    Rng tie_rng = Rng(config.rng_seed).split(1);

    GreedyState state(space, part, config.rank_variant, /*ranks=*/false, /*full_rows=*/false);
    LandmarkResult result;
    result.procedure = Procedure::maxmin;
    result.rank_variant = config.rank_variant;

    const std::size_t n_stop = config.num_landmarks.value_or(1);
    const double eps_stop = config.radius.value_or(kInf);

    state.add_landmark(resolve_seed(space, config, Procedure::maxmin, seed_rng));
    record_step(result, state);
    while (!state.exhausted()) {
        if (state.landmarks.size() >= n_stop && result.per_step.back().radius <= eps_stop)
            break;
        state.add_landmark(state.pick(config.tie_rule, state.distance_candidates(), tie_rng));
        record_step(result, state);
    }

    result.landmarks = state.landmarks;
    result.final_radius = std::max(config.radius.value_or(0.0), result.per_step.back().radius);
    return result;
}

LandmarkResult lastfirst_landmarks(const DissimilaritySpace& space, const SamplerConfig& config) {
    require(config.num_landmarks.has_value() || config.cardinality.has_value(), errc::config,
            "lastfirst needs a landmark count or a cardinality");
    if (config.num_landmarks)
        require(*config.num_landmarks >= 1, errc::config, "landmark count must be >= 1");

    const auto part = colocation(space);
    Rng seed_rng = Rng(config.rng_seed).split(0);
    Rng tie_rng = Rng(config.rng_seed).split(1);

    GreedyState state(space, part, config.rank_variant, /*ranks=*/true,
                      config.tie_rule == TieRule::iterative_refinement);
    LandmarkResult result;
    result.procedure = Procedure::lastfirst;
    result.rank_variant = config.rank_variant;

    const std::size_t n_stop = config.num_landmarks.value_or(0);
    const std::size_t k_stop =
        config.cardinality.value_or(std::numeric_limits<std::size_t>::max());

    state.add_landmark(resolve_seed(space, config, Procedure::lastfirst, seed_rng));
    record_step(result, state);
    while (!state.exhausted()) {
        if (state.landmarks.size() >= n_stop && *result.per_step.back().cardinality <= k_stop)
            break;
        state.add_landmark(state.pick(config.tie_rule, state.rank_candidates(), tie_rng));
        record_step(result, state);
    }

    result.landmarks = state.landmarks;
    result.final_radius = result.per_step.back().radius;
    result.final_cardinality =
        std::max(config.cardinality.value_or(0), *result.per_step.back().cardinality);
    return result;
}

LandmarkResult random_landmarks(const DissimilaritySpace& space, const SamplerConfig& config) {
    require(config.num_landmarks.has_value(), errc::config,
            "random sampling needs a landmark count");
    const auto part = colocation(space);
    const std::size_t n = *config.num_landmarks;
    require(n >= 1, errc::config, "landmark count must be >= 1");
    require(n <= part.uniq(), errc::too_many_requested,
            "requested more landmarks than distinguishable points");

    Rng rng = Rng(config.rng_seed).split(2);
    std::vector<index_t> classes(part.uniq());
    for (std::size_t i = 0; i < classes.size(); ++i) classes[i] = i;
    // Partial Fisher-Yates: the first n entries become the sample.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.uniform_index(classes.size() - i);
        std::swap(classes[i], classes[j]);
    }

    GreedyState state(space, part, config.rank_variant, /*ranks=*/true, /*full_rows=*/false);
    LandmarkResult result;
    result.procedure = Procedure::random_sample;
    result.rank_variant = config.rank_variant;
    for (std::size_t i = 0; i < n; ++i) {
        state.add_landmark(part.classes[classes[i]].front());
        record_step(result, state);
    }
    result.landmarks = state.landmarks;
    result.final_radius = result.per_step.back().radius;
    result.final_cardinality = *result.per_step.back().cardinality;
    return result;
}

LandmarkResult generate_landmarks(const DissimilaritySpace& space, const SamplerConfig& config) {
    switch (config.procedure) {
        case Procedure::maxmin:
            return maxmin_landmarks(space, config);
        case Procedure::lastfirst:
            return lastfirst_landmarks(space, config);
        case Procedure::random_sample:
            return random_landmarks(space, config);
    }
    fail(errc::config, "unknown procedure");
}

double Cover::membership(index_t point, std::size_t set) const {
    const auto& owners = sets_of_point[point];
    if (std::find(owners.begin(), owners.end(), set) == owners.end()) return 0.0;
    return 1.0 / static_cast<double>(owners.size());
}

std::vector<std::vector<index_t>> ball_cover_sets(const DissimilaritySpace& space,
                                                  const std::vector<index_t>& landmarks,
                                                  double radius) {
    std::vector<std::vector<index_t>> sets(landmarks.size());
    std::vector<double> row(space.size());
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
        require(landmarks[i] < space.size(), errc::mismatched_space,
                "landmark index outside the space");
        space.dissim_row(landmarks[i], row.data());
        for (std::size_t x = 0; x < space.size(); ++x)
            if (row[x] <= radius) sets[i].push_back(x);
    }
    return sets;
}

std::vector<std::vector<index_t>> neighborhood_cover_sets(const DissimilaritySpace& space,
                                                          const std::vector<index_t>& landmarks,
                                                          double rank_bound,
                                                          RankVariant variant) {
    std::vector<std::vector<index_t>> sets(landmarks.size());
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
        require(landmarks[i] < space.size(), errc::mismatched_space,
                "landmark index outside the space");
        const auto ranks = rank_row(space, variant, landmarks[i]);
        for (std::size_t x = 0; x < space.size(); ++x)
            if (static_cast<double>(ranks[x]) <= rank_bound) sets[i].push_back(x);
    }
    return sets;
}

namespace {

Cover finish_cover(const DissimilaritySpace& space, const std::vector<index_t>& landmarks,
                   CoverKind kind, double ext_mult, double ext_add, RankVariant variant,
                   double base_param) {
    require(ext_mult >= 0.0 && ext_add >= 0.0, errc::config,
            "extension factors must be nonnegative");
    Cover cover;
    cover.kind = kind;
    cover.ext_mult = ext_mult;
    cover.ext_add = ext_add;
    if (kind == CoverKind::ball) {
        cover.effective_param = base_param * (1.0 + ext_mult) + ext_add;
        cover.sets = ball_cover_sets(space, landmarks, cover.effective_param);
    } else {
        cover.effective_param = std::ceil(base_param * (1.0 + ext_mult)) + ext_add;
        cover.sets = neighborhood_cover_sets(space, landmarks, cover.effective_param, variant);
    }
    cover.sets_of_point.assign(space.size(), {});
    for (std::size_t j = 0; j < cover.sets.size(); ++j)
        for (index_t x : cover.sets[j])
            cover.sets_of_point[x].push_back(static_cast<std::uint32_t>(j));
    for (std::size_t x = 0; x < space.size(); ++x)
        require(!cover.sets_of_point[x].empty(), errc::mismatched_space,
                "cover fails to reach point " + std::to_string(x));
    return cover;
}

}  // namespace

Cover build_cover(const DissimilaritySpace& space, const LandmarkResult& result, CoverKind kind,
                  double ext_mult, double ext_add, RankVariant variant) {
    require(!result.landmarks.empty(), errc::empty_cover, "landmark result is empty");
    double base;
    if (kind == CoverKind::ball) {
        base = result.final_radius;
    } else {
        base = result.final_cardinality
                   ? static_cast<double>(*result.final_cardinality)
                   : static_cast<double>(
                         covering_cardinality(space, result.landmarks, variant));
    }
    return finish_cover(space, result.landmarks, kind, ext_mult, ext_add, variant, base);
}

Cover build_prefix_cover(const DissimilaritySpace& space, const LandmarkResult& result,
                         std::size_t m, CoverKind kind, double ext_mult, double ext_add,
                         RankVariant variant) {
    require(m >= 1 && m <= result.landmarks.size(), errc::index_out_of_bounds,
            "prefix length out of range");
    std::vector<index_t> prefix(result.landmarks.begin(), result.landmarks.begin() + m);
    double base;
    if (kind == CoverKind::ball) {
        base = result.per_step[m - 1].radius;
    } else {
        base = result.per_step[m - 1].cardinality
                   ? static_cast<double>(*result.per_step[m - 1].cardinality)
                   : static_cast<double>(covering_cardinality(space, prefix, variant));
    }
    return finish_cover(space, prefix, kind, ext_mult, ext_add, variant, base);
}

}  // namespace lmk
