#include "lmk/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lmk {

double mpc(const Cover& cover) {
    const std::size_t k = cover.sets.size();
    require(k >= 2, errc::single_set, "MPC is undefined for a single-set cover");
    const std::size_t n = cover.num_points();
    // With equal membership splitting, sum_j u_ij^2 = 1 / (sets containing i).
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        require(!cover.sets_of_point[i].empty(), errc::empty_cover,
                "point outside every cover set");
        total += 1.0 / static_cast<double>(cover.sets_of_point[i].size());
    }
    const double pc = total / static_cast<double>(n);
    return 1.0 - static_cast<double>(k) / static_cast<double>(k - 1) * (1.0 - pc);
}

std::vector<double> cover_risk_scores(const Cover& cover, const std::vector<int>& outcomes) {
    const std::size_t n = cover.num_points();
    require(outcomes.size() == n, errc::length_mismatch,
            "outcome vector does not match the cover");
    std::vector<double> incidence(cover.sets.size(), 0.0);
    for (std::size_t j = 0; j < cover.sets.size(); ++j) {
        double sum = 0.0;
        for (index_t x : cover.sets[j]) sum += outcomes[x];
        incidence[j] = cover.sets[j].empty() ? 0.0 : sum / static_cast<double>(cover.sets[j].size());
    }
    std::vector<double> scores(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& owners = cover.sets_of_point[i];
        const double u = 1.0 / static_cast<double>(owners.size());
        double q = 0.0;
        for (std::uint32_t j : owners) q += u * incidence[j];
        scores[i] = q;
    }
    return scores;
}

double auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
    require(scores.size() == labels.size(), errc::length_mismatch,
            "scores and labels differ in length");
    const std::size_t n = scores.size();
    std::size_t positives = 0;
    for (int y : labels) positives += y ? 1 : 0;
    const std::size_t negatives = n - positives;
    require(positives > 0 && negatives > 0, errc::degenerate_labels,
            "AUROC needs both classes present");

    // Midrank formulation of the rank-sum statistic.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j - 1) + 1.0;
        for (std::size_t t = i; t < j; ++t)
            if (labels[order[t]]) positive_rank_sum += midrank;
        i = j;
    }
    const double u = positive_rank_sum -
                     static_cast<double>(positives) * (static_cast<double>(positives) + 1.0) / 2.0;
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

KnnProfile landmark_knn_profile(const DissimilaritySpace& space,
                                const std::vector<index_t>& landmarks,
                                const std::vector<index_t>& training,
                                const std::vector<int>& outcomes, std::size_t neighborhood_size) {
    require(!landmarks.empty(), errc::empty_input, "profile needs at least one landmark");
    require(outcomes.size() == space.size(), errc::length_mismatch,
            "outcome vector does not match the space");
    require(neighborhood_size >= 1 && neighborhood_size <= training.size(),
            errc::insufficient_training,
            "training set must be at least as large as the neighborhood size");

    KnnProfile profile;
    profile.landmarks = landmarks;
    profile.k_max = neighborhood_size;
    profile.means.assign(landmarks.size(), {});

    std::vector<std::pair<double, index_t>> by_distance(training.size());
    for (std::size_t li = 0; li < landmarks.size(); ++li) {
        for (std::size_t t = 0; t < training.size(); ++t)
            by_distance[t] = {space.dissim(landmarks[li], training[t]), training[t]};
        std::sort(by_distance.begin(), by_distance.end());

        // The k nearest include every point tied with the k-th distance, so
        // the mean at k is the running mean through the tie group covering
        // position k.
        auto& means = profile.means[li];
        means.assign(neighborhood_size, 0.0);
        double running = 0.0;
        std::size_t pos = 0;
        while (pos < by_distance.size()) {
            std::size_t group_end = pos;
            while (group_end < by_distance.size() &&
                   by_distance[group_end].first == by_distance[pos].first)
                ++group_end;
            for (std::size_t t = pos; t < group_end; ++t)
                running += outcomes[by_distance[t].second];
            const double group_mean = running / static_cast<double>(group_end);
            for (std::size_t k = pos; k < group_end && k < neighborhood_size; ++k)
                means[k] = group_mean;
            pos = group_end;
            if (pos >= neighborhood_size) break;
        }
    }
    return profile;
}

namespace {

std::vector<double> landmark_weights(const DissimilaritySpace& space, index_t x,
                                     const std::vector<index_t>& landmarks,
                                     const WeightingScheme& scheme) {
    std::vector<double> dist(landmarks.size());
    for (std::size_t i = 0; i < landmarks.size(); ++i) dist[i] = space.dissim(x, landmarks[i]);
    std::vector<double> w(landmarks.size(), 0.0);
    switch (scheme.kind) {
        case WeightKind::inverse_distance:
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / dist[i];
            break;
        case WeightKind::triangle: {
            const double dmax = *std::max_element(dist.begin(), dist.end());
            if (dmax > 0.0)
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] = std::max(0.0, 1.0 - dist[i] / dmax);
            break;
        }
        case WeightKind::gaussian: {
            double sigma;
            if (scheme.bandwidth) {
                sigma = *scheme.bandwidth;
            } else {
                std::vector<double> sorted = dist;
                std::sort(sorted.begin(), sorted.end());
                const std::size_t mid = sorted.size() / 2;
                sigma = sorted.size() % 2 == 1 ? sorted[mid]
                                               : 0.5 * (sorted[mid - 1] + sorted[mid]);
            }
            if (sigma > 0.0)
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] = std::exp(-dist[i] * dist[i] / (2.0 * sigma * sigma));
            break;
        }
        case WeightKind::rank:
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::size_t r = 0;
                for (std::size_t j = 0; j < dist.size(); ++j)
                    if (dist[j] < dist[i]) ++r;
                w[i] = 1.0 / (1.0 + static_cast<double>(r));
            }
            break;
    }
    return w;
}

double weighted_estimate(const std::vector<double>& weights, const std::vector<double>& values) {
    double wsum = 0.0, vsum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        wsum += weights[i];
        vsum += weights[i] * values[i];
    }
    if (!(wsum > 0.0) || !std::isfinite(wsum)) {
        // Degenerate weights (all zero, e.g. triangle with equidistant
        // landmarks): fall back to the unweighted mean.
        double mean = 0.0;
        for (double v : values) mean += v;
        return mean / static_cast<double>(values.size());
    }
    return vsum / wsum;
}

}  // namespace

double inn_predict(const DissimilaritySpace& space, index_t test_point,
                   const KnnProfile& profile, std::size_t k, const WeightingScheme& scheme) {
    require(!profile.landmarks.empty(), errc::empty_input, "prediction without landmarks");
    require(k >= 1 && k <= profile.k_max, errc::index_out_of_bounds,
            "k outside the profiled range");

    // Limit convention: a test point indistinguishable from a landmark
    // takes that landmark's estimate.
    std::size_t nearest = profile.landmarks.size();
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < profile.landmarks.size(); ++i) {
        const double d = space.dissim(test_point, profile.landmarks[i]);
        if (d <= space.colocation_tolerance() && d < nearest_dist) {
            nearest = i;
            nearest_dist = d;
        }
    }
    if (nearest < profile.landmarks.size()) return profile.means[nearest][k - 1];

    const auto weights = landmark_weights(space, test_point, profile.landmarks, scheme);
    std::vector<double> values(profile.landmarks.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = profile.means[i][k - 1];
    return weighted_estimate(weights, values);
}

namespace {

std::vector<std::vector<index_t>> chunk_folds(std::vector<index_t> order, std::size_t folds) {
    // Contiguous chunks of floor(n/folds); the remainder is spread one per
    // fold from the front.
    const std::size_t n = order.size();
    const std::size_t base = n / folds;
    const std::size_t extra = n % folds;
    std::vector<std::vector<index_t>> out(folds);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t len = base + (f < extra ? 1 : 0);
        out[f].assign(order.begin() + pos, order.begin() + pos + len);
        std::sort(out[f].begin(), out[f].end());
        pos += len;
    }
    return out;
}

std::vector<std::vector<index_t>> random_partition(const std::vector<index_t>& points,
                                                   std::size_t folds, Rng& rng) {
    std::vector<index_t> order = points;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_index(i)]);
    return chunk_folds(std::move(order), folds);
}

void check_both_classes(const std::vector<index_t>& fold, const std::vector<int>& outcomes,
                        const char* stage) {
    bool pos = false, neg = false;
    for (index_t i : fold) (outcomes[i] ? pos : neg) = true;
    require(pos && neg, errc::degenerate_fold,
            std::string(stage) + " fold holds a single outcome class");
}

struct TunedModel {
    std::size_t scheme_index = 0;
    std::size_t k = 1;
};

// Landmarks and profile from the training points, then (scheme, k)
// maximizing AUROC on the tuning points. Ties prefer the earlier scheme
// and smaller k. Returns the local->global landmark profile.
struct FittedModel {
    KnnProfile profile;
    TunedModel tuned;
};

FittedModel fit_and_tune(const DissimilaritySpace& space, const std::vector<int>& outcomes,
                         const SamplerConfig& config, std::size_t n_landmarks,
                         const std::vector<index_t>& train, const std::vector<index_t>& tune,
                         const std::vector<WeightingScheme>& schemes, std::size_t k_cap,
                         std::uint64_t fold_seed) {
    const auto sub = space.subspace(train);
    SamplerConfig run = config;
    run.rng_seed = fold_seed;
    run.num_landmarks = n_landmarks;
    run.radius.reset();
    run.cardinality.reset();
    if (run.procedure == Procedure::random_sample) {
        const auto uniq = colocation(sub).uniq();
        run.num_landmarks = std::min(n_landmarks, uniq);
    }
    auto local = generate_landmarks(sub, run);
    std::vector<index_t> landmarks(local.landmarks.size());
    for (std::size_t i = 0; i < landmarks.size(); ++i) landmarks[i] = train[local.landmarks[i]];

    const std::size_t k_max = std::min(k_cap, train.size());
    FittedModel model;
    model.profile = landmark_knn_profile(space, landmarks, train, outcomes, k_max);

    std::vector<int> tune_labels(tune.size());
    for (std::size_t t = 0; t < tune.size(); ++t) tune_labels[t] = outcomes[tune[t]];

    double best = -1.0;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        // Weights are independent of k; compute once per point and scheme.
        std::vector<std::vector<double>> weights(tune.size());
        std::vector<std::size_t> colocated_with(tune.size(), landmarks.size());
        for (std::size_t t = 0; t < tune.size(); ++t) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < landmarks.size(); ++i) {
                const double d = space.dissim(tune[t], landmarks[i]);
                if (d <= space.colocation_tolerance() && d < nearest) {
                    colocated_with[t] = i;
                    nearest = d;
                }
            }
            if (colocated_with[t] == landmarks.size())
                weights[t] = landmark_weights(space, tune[t], landmarks, schemes[s]);
        }
        std::vector<double> scores(tune.size());
        std::vector<double> values(landmarks.size());
        for (std::size_t k = 1; k <= k_max; ++k) {
            for (std::size_t i = 0; i < landmarks.size(); ++i)
                values[i] = model.profile.means[i][k - 1];
            for (std::size_t t = 0; t < tune.size(); ++t)
                scores[t] = colocated_with[t] < landmarks.size()
                                ? values[colocated_with[t]]
                                : weighted_estimate(weights[t], values);
            const double a = auroc(scores, tune_labels);
            if (a > best) {
                best = a;
                model.tuned = {s, k};
            }
        }
    }
    return model;
}

double score_model(const DissimilaritySpace& space, const std::vector<int>& outcomes,
                   const FittedModel& model, const std::vector<WeightingScheme>& schemes,
                   const std::vector<index_t>& test) {
    std::vector<double> scores(test.size());
    std::vector<int> labels(test.size());
    for (std::size_t t = 0; t < test.size(); ++t) {
        scores[t] = inn_predict(space, test[t], model.profile, model.tuned.k,
                                schemes[model.tuned.scheme_index]);
        labels[t] = outcomes[test[t]];
    }
    return auroc(scores, labels);
}

}  // namespace

std::vector<NestedCvRow> nested_cv(const DissimilaritySpace& space,
                                   const std::vector<int>& outcomes, SamplerConfig config,
                                   const CvPlan& plan,
                                   const std::vector<std::size_t>& landmark_counts,
                                   const std::vector<WeightingScheme>& schemes,
                                   const CvObserver& observer) {
    const std::size_t n = space.size();
    require(outcomes.size() == n, errc::length_mismatch,
            "outcome vector does not match the space");
    require(plan.outer_folds >= 2 && plan.inner_folds >= 2, errc::config,
            "cross-validation needs at least two folds per level");
    require(n >= plan.outer_folds * 2, errc::degenerate_fold,
            "too few points for the requested folds");
    require(!landmark_counts.empty() && !schemes.empty(), errc::config,
            "landmark counts and schemes must be nonempty");

    std::vector<index_t> all(n);
    std::iota(all.begin(), all.end(), index_t{0});
    Rng outer_rng = Rng(plan.rng_seed).split(10);
    const auto outer = random_partition(all, plan.outer_folds, outer_rng);

    std::vector<NestedCvRow> rows;
    for (std::size_t i = 0; i < plan.outer_folds; ++i) {
        check_both_classes(outer[i], outcomes, "outer");
        std::vector<index_t> rest;
        for (std::size_t f = 0; f < plan.outer_folds; ++f)
            if (f != i) rest.insert(rest.end(), outer[f].begin(), outer[f].end());
        std::sort(rest.begin(), rest.end());
        Rng inner_rng = Rng(plan.rng_seed).split(100 + i);
        const auto inner = random_partition(rest, plan.inner_folds, inner_rng);

        for (std::size_t j = 0; j < plan.inner_folds; ++j) {
            check_both_classes(inner[j], outcomes, "inner");
            std::vector<index_t> train;
            for (std::size_t f = 0; f < plan.inner_folds; ++f)
                if (f != j) train.insert(train.end(), inner[f].begin(), inner[f].end());
            std::sort(train.begin(), train.end());

            if (observer) observer({i, j, train, inner[j], outer[i]});

            for (std::size_t count : landmark_counts) {
                const auto model = fit_and_tune(space, outcomes, config, count, train, inner[j],
                                                schemes, plan.neighborhood_size,
                                                mix64(plan.rng_seed ^ (i * 1000 + j)));
                NestedCvRow row;
                row.n_landmarks = count;
                row.scheme = schemes[model.tuned.scheme_index].kind;
                row.k = model.tuned.k;
                row.fold_outer = i;
                row.fold_inner = j;
                row.auroc = score_model(space, outcomes, model, schemes, outer[i]);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<TemporalCvRow> temporal_cv(const DissimilaritySpace& space,
                                       const std::vector<int>& outcomes,
                                       const std::vector<std::string>& period_of_point,
                                       SamplerConfig config, const CvPlan& plan,
                                       const std::vector<std::size_t>& landmark_counts) {
    const std::size_t n = space.size();
    require(outcomes.size() == n && period_of_point.size() == n, errc::length_mismatch,
            "outcomes and periods must match the space");

    // Periods ordered by first appearance.
    std::vector<std::string> periods;
    std::vector<std::vector<index_t>> members;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(periods.begin(), periods.end(), period_of_point[i]);
        if (it == periods.end()) {
            periods.push_back(period_of_point[i]);
            members.emplace_back();
            it = periods.end() - 1;
        }
        members[static_cast<std::size_t>(it - periods.begin())].push_back(i);
    }
    require(periods.size() >= 2, errc::single_period,
            "temporal validation needs at least two periods");

    const std::vector<WeightingScheme> schemes{{WeightKind::gaussian, std::nullopt}};
    std::vector<TemporalCvRow> rows;
    for (std::size_t t = 1; t < periods.size(); ++t) {
        const auto& train = members[t - 1];
        Rng part_rng = Rng(plan.rng_seed).split(200 + t);
        const auto parts = random_partition(members[t], plan.inner_folds, part_rng);
        for (std::size_t p = 0; p < parts.size(); ++p) {
            check_both_classes(parts[p], outcomes, "temporal");
            std::vector<index_t> tune;
            for (std::size_t q = 0; q < parts.size(); ++q)
                if (q != p) tune.insert(tune.end(), parts[q].begin(), parts[q].end());
            std::sort(tune.begin(), tune.end());
            check_both_classes(tune, outcomes, "temporal tuning");

            for (std::size_t count : landmark_counts) {
                const auto model =
                    fit_and_tune(space, outcomes, config, count, train, tune, schemes,
                                 plan.neighborhood_size, mix64(plan.rng_seed ^ (t * 100 + p)));
                TemporalCvRow row;
                row.n_landmarks = count;
                row.period = periods[t];
                row.part = p;
                row.k = model.tuned.k;
                row.auroc = score_model(space, outcomes, model, schemes, parts[p]);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::string weight_kind_name(WeightKind kind) {
    switch (kind) {
        case WeightKind::inverse_distance: return "inverse";
        case WeightKind::triangle: return "triangle";
        case WeightKind::gaussian: return "gaussian";
        case WeightKind::rank: return "rank";
    }
    return "unknown";
}

WeightKind weight_kind_from_name(const std::string& name) {
    if (name == "inverse" || name == "inverse_distance") return WeightKind::inverse_distance;
    if (name == "triangle") return WeightKind::triangle;
    if (name == "gaussian") return WeightKind::gaussian;
    if (name == "rank") return WeightKind::rank;
    fail(errc::config, "unknown weighting scheme: " + name);
}

}  // namespace lmk
