#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lmk/evalmetrics.hpp"
#include "lmk/rng.hpp"

using namespace lmk;

namespace {

Cover cover_from_sets(std::vector<std::vector<index_t>> sets, std::size_t n_points) {
    Cover cover;
    cover.kind = CoverKind::ball;
    cover.sets = std::move(sets);
    cover.sets_of_point.assign(n_points, {});
    for (std::size_t j = 0; j < cover.sets.size(); ++j) {
        std::sort(cover.sets[j].begin(), cover.sets[j].end());
        for (index_t x : cover.sets[j])
            cover.sets_of_point[x].push_back(static_cast<std::uint32_t>(j));
    }
    return cover;
}

// O(n^2) pairwise concordance count.
double auroc_oracle(const std::vector<double>& scores, const std::vector<int>& labels) {
    double num = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j])
                num += 1.0;
            else if (scores[i] == scores[j])
                num += 0.5;
        }
    }
    return num / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("mpc on crisp and shared covers") {
    const auto crisp = cover_from_sets({{0, 1}, {2, 3}, {4}}, 5);
    CHECK(mpc(crisp) == doctest::Approx(1.0).epsilon(1e-12));

    const auto shared = cover_from_sets({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, 3);
    CHECK(mpc(shared) == doctest::Approx(0.0).epsilon(1e-12));

    // n = 2, k = 2, one point crisp, one split evenly.
    const auto half = cover_from_sets({{0, 1}, {1}}, 2);
    CHECK(mpc(half) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(mpc(cover_from_sets({{0, 1}}, 2)), error);
}

TEST_CASE("mpc decreases when membership is split") {
    const auto before = cover_from_sets({{0, 1}, {2, 3}}, 4);
    const auto after = cover_from_sets({{0, 1}, {1, 2, 3}}, 4);
    CHECK(mpc(after) < mpc(before));
    CHECK(mpc(after) >= 0.0);
    CHECK(mpc(before) <= 1.0);
}

TEST_CASE("cover risk scores") {
    const auto cover = cover_from_sets({{0, 1, 2, 3, 4}, {4, 5, 6, 7, 8}}, 9);
    SUBCASE("all positive outcomes give unit scores") {
        const std::vector<int> ones(9, 1);
        for (double q : cover_risk_scores(cover, ones)) CHECK(q == doctest::Approx(1.0));
    }
    SUBCASE("crisp covers return the set incidence") {
        const auto crisp = cover_from_sets({{0, 1, 2, 3}, {4, 5, 6, 7}}, 8);
        const std::vector<int> y{1, 1, 0, 0, 1, 0, 0, 0};
        const auto q = cover_risk_scores(crisp, y);
        CHECK(q[0] == doctest::Approx(0.5));
        CHECK(q[5] == doctest::Approx(0.25));
    }
    SUBCASE("shared point averages the incidences") {
        // Set incidences 0.2 and 0.6; the shared point splits evenly.
        const std::vector<int> y{0, 0, 0, 0, 1, 1, 1, 0, 0};
        const auto q = cover_risk_scores(cover, y);
        CHECK(q[4] == doctest::Approx(0.4));
    }
}

TEST_CASE("auroc basics") {
    CHECK(auroc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == doctest::Approx(1.0));
    CHECK(auroc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(auroc({0.1, 0.2}, {1, 1}), error);
}

TEST_CASE("auroc equals the pairwise oracle") {
    Rng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng.uniform_index(40);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng.uniform_index(6)) / 5.0;  // heavy ties
            labels[i] = rng.uniform() < 0.4 ? 1 : 0;
            (labels[i] ? pos : neg) = true;
        }
        if (!pos) labels[0] = 1;
        if (!neg) labels[n - 1] = 0;
        CHECK(auroc(scores, labels) ==
              doctest::Approx(auroc_oracle(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("auroc is invariant under increasing transforms") {
    Rng rng(777);
    std::vector<double> scores(30);
    std::vector<int> labels(30);
    for (std::size_t i = 0; i < 30; ++i) {
        scores[i] = rng.uniform();
        labels[i] = i % 3 == 0;
    }
    auto transformed = scores;
    for (auto& s : transformed) s = std::exp(3.0 * s) + 1.0;
    CHECK(auroc(scores, labels) == doctest::Approx(auroc(transformed, labels)));
}

TEST_CASE("knn profile on a line") {
    // Training points at 0..5 with outcomes 1,0,0,1,0,1; landmark at 0.
    const auto space = euclidean_space({0, 1, 2, 3, 4, 5}, 6, 1);
    const std::vector<int> y{1, 0, 0, 1, 0, 1};
    const std::vector<index_t> train{0, 1, 2, 3, 4, 5};
    const auto profile = landmark_knn_profile(space, {0}, train, y, 6);
    CHECK(profile.means[0][0] == doctest::Approx(1.0));        // itself
    CHECK(profile.means[0][1] == doctest::Approx(0.5));        // {0,1}
    CHECK(profile.means[0][5] == doctest::Approx(3.0 / 6.0));  // global incidence

    // Distance ties are absorbed into the same averaging set.
    const auto sym = euclidean_space({0, -1, 1, 5}, 4, 1);
    const std::vector<int> ty{0, 1, 0, 1};
    const auto p2 = landmark_knn_profile(sym, {0}, {0, 1, 2, 3}, ty, 4);
    CHECK(p2.means[0][1] == doctest::Approx(1.0 / 3.0));  // tie group {0,-1,1}
    CHECK(p2.means[0][2] == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(landmark_knn_profile(space, {0}, train, y, 7), error);
}

TEST_CASE("knn profile: co-located landmark at k = 1") {
    const auto space = euclidean_space({2.0, 2.0, 5.0}, 3, 1);
    const std::vector<int> y{1, 1, 0};
    const auto profile = landmark_knn_profile(space, {0}, {0, 1, 2}, y, 3);
    CHECK(profile.means[0][0] == doctest::Approx(1.0));
}

TEST_CASE("inn prediction") {
    SUBCASE("single landmark returns its estimate") {
        const auto space = euclidean_space({0.0, 1.0, 3.0, 9.0}, 4, 1);
        const std::vector<int> y{1, 0, 1, 0};
        const auto profile = landmark_knn_profile(space, {1}, {0, 1, 2, 3}, y, 2);
        for (const auto kind :
             {WeightKind::inverse_distance, WeightKind::triangle, WeightKind::gaussian,
              WeightKind::rank})
            CHECK(inn_predict(space, 3, profile, 2, {kind, {}}) ==
                  doctest::Approx(profile.means[0][1]));
    }
    SUBCASE("equidistant landmarks average their estimates") {
        const auto line = euclidean_space({0.0, 2.0, 1.0, 5.0}, 4, 1);
        const std::vector<int> ly{1, 0, 0, 0};
        const auto profile = landmark_knn_profile(line, {0, 1}, {0, 1, 3}, ly, 1);
        const double expected = 0.5 * (profile.means[0][0] + profile.means[1][0]);
        for (const auto kind :
             {WeightKind::inverse_distance, WeightKind::triangle, WeightKind::gaussian,
              WeightKind::rank})
            CHECK(inn_predict(line, 2, profile, 1, {kind, {}}) == doctest::Approx(expected));
    }
    SUBCASE("inverse distance weighting") {
        // Landmarks at distances 1 and 3 from the test point, estimates 0 and 1.
        const auto line = euclidean_space({1.0, -3.0, 0.0, 1.0, -3.0}, 5, 1);
        const std::vector<int> ly{0, 1, 0, 0, 1};
        const auto profile = landmark_knn_profile(line, {0, 1}, {3, 4}, ly, 1);
        CHECK(profile.means[0][0] == doctest::Approx(0.0));
        CHECK(profile.means[1][0] == doctest::Approx(1.0));
        CHECK(inn_predict(line, 2, profile, 1, {WeightKind::inverse_distance, {}}) ==
              doctest::Approx(0.25));
    }
    SUBCASE("co-located test point takes the landmark estimate") {
        const auto line = euclidean_space({0.0, 4.0, 0.0}, 3, 1);
        const std::vector<int> ly{1, 0, 1};
        const auto profile = landmark_knn_profile(line, {0, 1}, {0, 1}, ly, 2);
        CHECK(inn_predict(line, 2, profile, 1, {WeightKind::inverse_distance, {}}) ==
              doctest::Approx(profile.means[0][0]));
    }
    SUBCASE("prediction stays within the estimate hull") {
        Rng rng(999);
        std::vector<double> c;
        for (int i = 0; i < 40; ++i) c.push_back(rng.uniform(0.0, 10.0));
        const auto cloudspace = euclidean_space(c, 20, 2);
        std::vector<int> ly(20);
        for (auto& v : ly) v = rng.uniform() < 0.5;
        std::vector<index_t> tr;
        for (index_t i = 0; i < 15; ++i) tr.push_back(i);
        const auto profile = landmark_knn_profile(cloudspace, {0, 5, 9}, tr, ly, 10);
        for (index_t x = 15; x < 20; ++x) {
            for (const auto kind :
                 {WeightKind::inverse_distance, WeightKind::triangle, WeightKind::gaussian,
                  WeightKind::rank}) {
                const double p = inn_predict(cloudspace, x, profile, 7, {kind, {}});
                double lo = 1.0, hi = 0.0;
                for (const auto& m : profile.means) {
                    lo = std::min(lo, m[6]);
                    hi = std::max(hi, m[6]);
                }
                CHECK(p >= lo - 1e-12);
                CHECK(p <= hi + 1e-12);
            }
        }
    }
}

namespace {

// Synthetic classification data: outcome probability rises along the first
// coordinate.
struct Planted {
    DissimilaritySpace space;
    std::vector<int> outcomes;
};

Planted planted_signal(std::size_t n, std::uint64_t seed, bool shuffle_labels) {
    Rng rng(seed);
    std::vector<double> coords;
    std::vector<int> outcomes;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        const double z = rng.uniform(-1.0, 1.0);
        coords.push_back(x);
        coords.push_back(z);
        const double p = 1.0 / (1.0 + std::exp(-6.0 * x));
        outcomes.push_back(rng.uniform() < p ? 1 : 0);
    }
    if (shuffle_labels) {
        Rng shuffler(seed ^ 0xfeed);
        for (std::size_t i = outcomes.size(); i > 1; --i)
            std::swap(outcomes[i - 1], outcomes[shuffler.uniform_index(i)]);
    }
    return {euclidean_space(coords, n, 2), std::move(outcomes)};
}

}  // namespace

TEST_CASE("nested cross-validation produces a full table and holds out the test fold") {
    const auto data = planted_signal(120, 7, false);
    SamplerConfig config;
    config.procedure = Procedure::maxmin;

    CvPlan plan;
    plan.rng_seed = 3;
    plan.neighborhood_size = 20;

    std::vector<CvFoldTrace> traces;
    const auto rows = nested_cv(data.space, data.outcomes, config, plan, {10},
                                {{WeightKind::gaussian, {}}, {WeightKind::inverse_distance, {}}},
                                [&](const CvFoldTrace& t) { traces.push_back(t); });
    CHECK(rows.size() == 36);
    REQUIRE(traces.size() == 36);
    for (const auto& t : traces) {
        // Tuning and training never touch the outer test fold.
        std::set<index_t> test(t.test.begin(), t.test.end());
        for (index_t i : t.train) CHECK(test.count(i) == 0);
        for (index_t i : t.tune) CHECK(test.count(i) == 0);
        std::set<index_t> tune(t.tune.begin(), t.tune.end());
        for (index_t i : t.train) CHECK(tune.count(i) == 0);
    }
    // Outer folds partition the space into six equal parts here.
    std::set<index_t> seen;
    std::size_t outer_total = 0;
    for (std::size_t f = 0; f < 6; ++f) {
        const auto& t = traces[f * 6];
        outer_total += t.test.size();
        for (index_t i : t.test) seen.insert(i);
        CHECK(t.test.size() == 20);
    }
    CHECK(outer_total == 120);
    CHECK(seen.size() == 120);

    // Determinism.
    const auto again = nested_cv(data.space, data.outcomes, config, plan, {10},
                                 {{WeightKind::gaussian, {}}, {WeightKind::inverse_distance, {}}});
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].auroc == rows[i].auroc);
        CHECK(again[i].k == rows[i].k);
    }
}

TEST_CASE("nested cv separates planted signal from noise") {
    const auto data = planted_signal(150, 11, false);
    SamplerConfig config;
    config.procedure = Procedure::lastfirst;
    CvPlan plan;
    plan.rng_seed = 5;
    plan.neighborhood_size = 25;
    const auto rows =
        nested_cv(data.space, data.outcomes, config, plan, {12}, {{WeightKind::gaussian, {}}});
    double mean = 0.0;
    for (const auto& r : rows) mean += r.auroc;
    mean /= static_cast<double>(rows.size());
    CHECK(mean > 0.7);

    const auto noise = planted_signal(150, 11, true);
    const auto noise_rows =
        nested_cv(noise.space, noise.outcomes, config, plan, {12}, {{WeightKind::gaussian, {}}});
    double noise_mean = 0.0;
    for (const auto& r : noise_rows) noise_mean += r.auroc;
    noise_mean /= static_cast<double>(noise_rows.size());
    CHECK(noise_mean > 0.35);
    CHECK(noise_mean < 0.65);
}

TEST_CASE("temporal cross-validation") {
    // Two periods with the same planted signal.
    const auto data = planted_signal(160, 13, false);
    std::vector<std::string> periods(160);
    for (std::size_t i = 0; i < 160; ++i) periods[i] = i < 80 ? "w1" : "w2";

    SamplerConfig config;
    config.procedure = Procedure::maxmin;
    CvPlan plan;
    plan.rng_seed = 9;
    plan.neighborhood_size = 20;

    const auto rows = temporal_cv(data.space, data.outcomes, periods, config, plan, {8});
    CHECK(rows.size() == 6);  // one evaluated period, six parts
    for (const auto& r : rows) {
        CHECK(r.period == "w2");
        CHECK(r.auroc >= 0.0);
        CHECK(r.auroc <= 1.0);
    }

    // A single period cannot be evaluated.
    std::vector<std::string> one(160, "w1");
    CHECK_THROWS_AS(temporal_cv(data.space, data.outcomes, one, config, plan, {8}), error);

    // Three periods carrying the same signal: evaluated-period means agree
    // up to fold noise.
    std::vector<std::string> three(160);
    for (std::size_t i = 0; i < 160; ++i)
        three[i] = i < 53 ? "w1" : i < 106 ? "w2" : "w3";
    const auto rows3 = temporal_cv(data.space, data.outcomes, three, config, plan, {8});
    CHECK(rows3.size() == 12);
    double m2 = 0.0, m3 = 0.0;
    for (const auto& r : rows3) (r.period == "w2" ? m2 : m3) += r.auroc / 6.0;
    CHECK(std::abs(m2 - m3) < 0.25);

    // A period with a single class trips the degenerate-fold error.
    auto outcomes = data.outcomes;
    for (std::size_t i = 80; i < 160; ++i) outcomes[i] = 1;
    CHECK_THROWS_AS(temporal_cv(data.space, outcomes, periods, config, plan, {8}), error);
}

TEST_CASE("weight scheme names round-trip") {
    for (const auto kind : {WeightKind::inverse_distance, WeightKind::triangle,
                            WeightKind::gaussian, WeightKind::rank})
        CHECK(weight_kind_from_name(weight_kind_name(kind)) == kind);
    CHECK_THROWS_AS(weight_kind_from_name("bogus"), error);
}
