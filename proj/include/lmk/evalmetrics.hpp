#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lmk/landmark.hpp"

namespace lmk {

/// Modified partition coefficient of a fuzzy cover: 1 on crisp partitions,
/// 0 when every point is shared by all sets. Needs at least two sets.
double mpc(const Cover& cover);

/// Per-point risk score: the membership-weighted average of the outcome
/// incidence of the sets containing the point.
std::vector<double> cover_risk_scores(const Cover& cover, const std::vector<int>& outcomes);

/// Area under the ROC curve by the rank statistic; tied scores credit 1/2.
/// Both classes must be present.
double auroc(const std::vector<double>& scores, const std::vector<int>& labels);

enum class WeightKind { inverse_distance, triangle, gaussian, rank };

struct WeightingScheme {
    WeightKind kind = WeightKind::inverse_distance;
    std::optional<double> bandwidth;  // gaussian; defaults to the median distance
};

/// Per-landmark nearest-neighbor outcome means: means[l][k-1] is the mean
/// outcome over the k nearest training points of landmark l (ties kept, so
/// the averaging set may exceed k). Landmark and training indices refer to
/// `space`; ranks are taken within the training set.
struct KnnProfile {
    std::vector<index_t> landmarks;
    std::size_t k_max = 0;
    std::vector<std::vector<double>> means;
};

KnnProfile landmark_knn_profile(const DissimilaritySpace& space,
                                const std::vector<index_t>& landmarks,
                                const std::vector<index_t>& training,
                                const std::vector<int>& outcomes, std::size_t neighborhood_size);

/// Distance-weighted interpolation of the per-landmark estimates for one
/// test point. A test point co-located with a landmark gets that landmark's
/// estimate exactly.
double inn_predict(const DissimilaritySpace& space, index_t test_point,
                   const KnnProfile& profile, std::size_t k, const WeightingScheme& scheme);

struct CvPlan {
    std::size_t outer_folds = 6;
    std::size_t inner_folds = 6;  // parts per period in temporal mode
    std::uint64_t rng_seed = 0;
    std::size_t neighborhood_size = 180;
};

struct NestedCvRow {
    std::size_t n_landmarks = 0;
    WeightKind scheme = WeightKind::inverse_distance;
    std::size_t k = 0;
    std::size_t fold_outer = 0;
    std::size_t fold_inner = 0;
    double auroc = 0.0;
};

struct TemporalCvRow {
    std::size_t n_landmarks = 0;
    std::string period;
    std::size_t part = 0;
    std::size_t k = 0;
    double auroc = 0.0;
};

/// Observation hook for cross-validation audits: called once per model fit
/// with the index sets used at each stage.
struct CvFoldTrace {
    std::size_t fold_outer;
    std::size_t fold_inner;
    std::vector<index_t> train;
    std::vector<index_t> tune;
    std::vector<index_t> test;
};
using CvObserver = std::function<void(const CvFoldTrace&)>;

/// Nested train-tune-test cross-validation of INN prediction. For each
/// (outer, inner) pair, landmarks are generated from the remaining points,
/// the neighborhood size k and weighting scheme are tuned on the inner
/// fold by AUROC, and the tuned model is scored on the outer fold.
std::vector<NestedCvRow> nested_cv(const DissimilaritySpace& space,
                                   const std::vector<int>& outcomes, SamplerConfig config,
                                   const CvPlan& plan,
                                   const std::vector<std::size_t>& landmark_counts,
                                   const std::vector<WeightingScheme>& schemes,
                                   const CvObserver& observer = nullptr);

/// Sliding-window cross-validation over ordered periods: models trained on
/// period t-1 are tuned and scored on the six random parts of period t,
/// with Gaussian weighting. Periods are ordered by first appearance.
std::vector<TemporalCvRow> temporal_cv(const DissimilaritySpace& space,
                                       const std::vector<int>& outcomes,
                                       const std::vector<std::string>& period_of_point,
                                       SamplerConfig config, const CvPlan& plan,
                                       const std::vector<std::size_t>& landmark_counts);

std::string weight_kind_name(WeightKind kind);
WeightKind weight_kind_from_name(const std::string& name);

}  // namespace lmk
