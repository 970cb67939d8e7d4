#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lmk/landmark.hpp"
#include "oracles.hpp"

using namespace lmk;

namespace {

DissimilaritySpace line_1244() {
    return euclidean_space({1.0, 2.0, 4.0, 4.0}, 4, 1);
}

constexpr index_t a = 0, b = 1, c = 2, d = 3;

// Random planar cloud; in half the trials a block of points is duplicated
// so co-location classes are exercised.
DissimilaritySpace random_space(Rng& rng, bool with_duplicates) {
    const std::size_t base = 6 + rng.uniform_index(14);
    std::vector<double> coords;
    for (std::size_t i = 0; i < base; ++i) {
        coords.push_back(rng.uniform(0.0, 4.0));
        coords.push_back(rng.uniform(0.0, 4.0));
    }
    if (with_duplicates) {
        const std::size_t copies = 1 + rng.uniform_index(base / 2);
        for (std::size_t i = 0; i < copies; ++i) {
            const std::size_t src = rng.uniform_index(base);
            coords.push_back(coords[2 * src]);
            coords.push_back(coords[2 * src + 1]);
        }
    }
    return euclidean_space(coords, coords.size() / 2, 2);
}

SamplerConfig exhaustive_lastfirst(index_t seed_point) {
    SamplerConfig config;
    config.procedure = Procedure::lastfirst;
    config.seed_point = seed_point;
    config.num_landmarks = 3;  // uniq of the line example
    return config;
}

}  // namespace

TEST_CASE("maxmin set on the line example") {
    const auto space = line_1244();
    CHECK(maxmin_set(space, {a}) == std::vector<index_t>{c, d});
    CHECK(maxmin_set(space, {a, b, c, d}).empty());
    const auto two = euclidean_space({0.0, 1.0}, 2, 1);
    CHECK(maxmin_set(two, {0}) == std::vector<index_t>{1});
}

TEST_CASE("covering radius") {
    const auto space = line_1244();
    CHECK(covering_radius(space, {a}) == 3.0);
    CHECK(covering_radius(space, {a, b, c, d}) == 0.0);
    CHECK(covering_radius(space, {c}) == 3.0);
}

TEST_CASE("covering cardinality") {
    const auto space = line_1244();
    CHECK(covering_cardinality(space, {c}) == 3);
    CHECK(covering_cardinality(space, {a, b, c, d}) == 0);
    CHECK(covering_cardinality(space, {a}) == 2);
}

TEST_CASE("lastfirst set on the line example") {
    const auto space = line_1244();
    CHECK(lastfirst_set(space, {c}) == std::vector<index_t>{a});
    CHECK(lastfirst_set(space, {a, b, c, d}).empty());
    CHECK(lastfirst_set(space, {a}) == std::vector<index_t>{c, d});
}

TEST_CASE("selection rules") {
    const auto space = line_1244();
    Rng rng(7);
    CHECK(select(space, TieRule::first_index, {c, d}, {}, Procedure::lastfirst,
                 RankVariant::check, rng) == c);
    CHECK(select(space, TieRule::iterative_refinement, {d}, {a}, Procedure::maxmin,
                 RankVariant::check, rng) == d);
    CHECK_THROWS_AS(select(space, TieRule::first_index, {}, {}, Procedure::maxmin,
                           RankVariant::check, rng),
                    error);
}

TEST_CASE("refinement splits ties at the second-nearest landmark") {
    // Landmarks at 0, 10, 11; candidates at 4 and 6 are both at distance 4
    // from their nearest landmark, but 4 is farther from its second (6 vs 5).
    const auto space = euclidean_space({0.0, 10.0, 11.0, 4.0, 6.0}, 5, 1);
    const std::vector<index_t> history{0, 1, 2};
    CHECK(maxmin_set(space, history) == std::vector<index_t>{3, 4});
    Rng rng(1);
    CHECK(select(space, TieRule::iterative_refinement, {3, 4}, history, Procedure::maxmin,
                 RankVariant::check, rng) == 3);
    CHECK(oracle::refine_distances(space, {3, 4}, history) == 3);
    // Plain first-index would have chosen the same here; swap the candidate
    // indices so the refined choice differs from the smallest index.
    const auto flipped = euclidean_space({0.0, 10.0, 11.0, 6.0, 4.0}, 5, 1);
    const std::vector<index_t> hist2{0, 1, 2};
    CHECK(maxmin_set(flipped, hist2) == std::vector<index_t>{3, 4});
    CHECK(select(flipped, TieRule::iterative_refinement, {3, 4}, hist2, Procedure::maxmin,
                 RankVariant::check, rng) == 4);
    CHECK(oracle::refine_distances(flipped, {3, 4}, hist2) == 4);
}

TEST_CASE("seed rules") {
    const auto space = line_1244();
    Rng rng(3);
    CHECK(lastfirst_seed_candidates(space) == std::vector<index_t>{c, d});
    CHECK(seed(space, SeedRule::chebyshev, Procedure::lastfirst, RankVariant::check, rng) == c);
    // Maxmin Chebyshev center: eccentricities are (3, 2, 3, 3).
    CHECK(maxmin_seed_candidates(space) == std::vector<index_t>{b});

    const auto singleton = euclidean_space({2.0}, 1, 1);
    CHECK(seed(singleton, SeedRule::chebyshev, Procedure::maxmin, RankVariant::check, rng) == 0);

    const auto three = euclidean_space({0.0, 1.0, 2.0}, 3, 1);
    CHECK(seed(three, SeedRule::chebyshev, Procedure::maxmin, RankVariant::check, rng) == 1);
}

TEST_CASE("maxmin landmarks on the line example") {
    SamplerConfig config;
    config.procedure = Procedure::maxmin;
    config.seed_point = a;
    config.num_landmarks = 2;
    const auto result = maxmin_landmarks(line_1244(), config);
    CHECK(result.landmarks == std::vector<index_t>{a, c});
    CHECK(result.per_step[1].radius == 1.0);
    CHECK(result.final_radius == 1.0);

    config.num_landmarks = 1;
    const auto one = maxmin_landmarks(line_1244(), config);
    CHECK(one.landmarks == std::vector<index_t>{a});
    CHECK(one.final_radius == 3.0);

    config.num_landmarks = 10;  // more than uniq(X): stops at exhaustion
    const auto all = maxmin_landmarks(line_1244(), config);
    CHECK(all.landmarks.size() == 3);
    CHECK(all.final_radius == 0.0);
}

TEST_CASE("maxmin with a prescribed radius") {
    SamplerConfig config;
    config.procedure = Procedure::maxmin;
    config.seed_point = a;
    config.radius = 1.0;
    const auto result = maxmin_landmarks(line_1244(), config);
    // Balls of radius 1 about the landmarks must cover all four points.
    CHECK(result.per_step.back().radius <= 1.0);
    CHECK(result.final_radius == 1.0);
    const auto sets = ball_cover_sets(line_1244(), result.landmarks, 1.0);
    std::vector<char> covered(4, 0);
    for (const auto& s : sets)
        for (index_t x : s) covered[x] = 1;
    CHECK(std::count(covered.begin(), covered.end(), 1) == 4);
}

TEST_CASE("exhaustive lastfirst reproduces the worked sequence") {
    const auto result = lastfirst_landmarks(line_1244(), exhaustive_lastfirst(c));
    CHECK(result.landmarks == std::vector<index_t>{c, a, b});
    // Seeding from the chebyshev rule gives the same tie set {c, d}.
    SamplerConfig config;
    config.procedure = Procedure::lastfirst;
    config.seed_rule = SeedRule::chebyshev;
    config.num_landmarks = 3;
    const auto seeded = lastfirst_landmarks(line_1244(), config);
    CHECK(seeded.landmarks == std::vector<index_t>{c, a, b});
}

TEST_CASE("lastfirst landmark counts") {
    SamplerConfig config;
    config.procedure = Procedure::lastfirst;
    config.seed_point = c;
    config.num_landmarks = 1;
    const auto one = lastfirst_landmarks(line_1244(), config);
    CHECK(one.landmarks == std::vector<index_t>{c});
    CHECK(*one.final_cardinality == 3);

    // Cardinality-only mode: smallest prefix covering by k-neighborhoods.
    SamplerConfig kmode;
    kmode.procedure = Procedure::lastfirst;
    kmode.seed_point = c;
    kmode.cardinality = 2;
    const auto ks = lastfirst_landmarks(line_1244(), kmode);
    CHECK(*ks.final_cardinality == 2);
    const auto sets = neighborhood_cover_sets(line_1244(), ks.landmarks, 2.0);
    std::vector<char> covered(4, 0);
    for (const auto& s : sets)
        for (index_t x : s) covered[x] = 1;
    CHECK(std::count(covered.begin(), covered.end(), 1) == 4);
    // No proper prefix suffices.
    std::vector<index_t> prefix(ks.landmarks.begin(), ks.landmarks.end() - 1);
    if (!prefix.empty()) CHECK(covering_cardinality(line_1244(), prefix) > 2);
}

TEST_CASE("samplers agree with the definition-level oracle") {
    Rng rng(20260809);
    for (int trial = 0; trial < 40; ++trial) {
        const auto space = random_space(rng, trial % 2 == 0);
        const auto uniq = colocation(space).uniq();
        const index_t seed_point = rng.uniform_index(space.size());
        const std::size_t n = 2 + rng.uniform_index(uniq - 1);
        for (const auto rule : {TieRule::first_index, TieRule::iterative_refinement}) {
            for (const auto procedure : {Procedure::maxmin, Procedure::lastfirst}) {
                SamplerConfig config;
                config.procedure = procedure;
                config.seed_point = seed_point;
                config.num_landmarks = n;
                config.tie_rule = rule;
                const auto got = generate_landmarks(space, config).landmarks;
                const auto want = oracle::landmarks(space, procedure, RankVariant::check, rule,
                                                    seed_point, n);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("hat-variant lastfirst agrees with the oracle") {
    Rng rng(5801);
    for (int trial = 0; trial < 15; ++trial) {
        const auto space = random_space(rng, true);  // duplicates make hat interesting
        const auto uniq = colocation(space).uniq();
        const index_t seed_point = rng.uniform_index(space.size());
        const std::size_t n = 2 + rng.uniform_index(std::min<std::size_t>(uniq - 1, 5));
        for (const auto rule : {TieRule::first_index, TieRule::iterative_refinement}) {
            SamplerConfig config;
            config.procedure = Procedure::lastfirst;
            config.rank_variant = RankVariant::hat;
            config.seed_point = seed_point;
            config.num_landmarks = n;
            config.tie_rule = rule;
            const auto got = lastfirst_landmarks(space, config).landmarks;
            const auto want = oracle::landmarks(space, Procedure::lastfirst, RankVariant::hat,
                                                rule, seed_point, n);
            CHECK(got == want);
        }
    }
}

TEST_CASE("lastfirst equals maxmin run on the rank matrix") {
    Rng rng(5150);
    for (int trial = 0; trial < 15; ++trial) {
        const auto space = random_space(rng, trial % 2 == 0);
        const std::size_t n = space.size();
        std::vector<double> rank_matrix(n * n);
        for (index_t x = 0; x < n; ++x) {
            const auto row = rank_row(space, RankVariant::check, x);
            for (index_t y = 0; y < n; ++y)
                rank_matrix[x * n + y] = static_cast<double>(row[y]);
        }
        const auto rank_space = build_space(rank_matrix, n, false);

        SamplerConfig config;
        config.procedure = Procedure::lastfirst;
        config.seed_point = 0;
        config.num_landmarks = colocation(space).uniq();
        const auto lf = lastfirst_landmarks(space, config);

        SamplerConfig mm = config;
        mm.procedure = Procedure::maxmin;
        const auto viaranks = maxmin_landmarks(rank_space, mm);

        CHECK(lf.landmarks == viaranks.landmarks);
        for (std::size_t i = 0; i < lf.per_step.size(); ++i)
            CHECK(static_cast<double>(*lf.per_step[i].cardinality) ==
                  viaranks.per_step[i].radius);
    }
}

TEST_CASE("distance and ball formulations agree step by step") {
    // On spaces in general position the maxmin set equals the complement of
    // the open covering-radius ball union.
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const auto space = random_space(rng, false);
        std::vector<index_t> landmarks{0};
        while (true) {
            const auto direct = maxmin_set(space, landmarks);
            if (direct.empty()) break;
            const double eps = covering_radius(space, landmarks);
            std::vector<index_t> via_balls;
            for (index_t x = 0; x < space.size(); ++x) {
                double nearest = std::numeric_limits<double>::infinity();
                for (index_t l : landmarks) nearest = std::min(nearest, space.dissim(l, x));
                if (nearest >= eps) via_balls.push_back(x);
            }
            CHECK(direct == via_balls);
            landmarks.push_back(direct.front());
        }
    }
}

TEST_CASE("landmark results satisfy the structural invariants") {
    Rng rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        const auto space = random_space(rng, true);
        const auto part = colocation(space);
        for (const auto procedure :
             {Procedure::maxmin, Procedure::lastfirst, Procedure::random_sample}) {
            SamplerConfig config;
            config.procedure = procedure;
            config.rng_seed = 1000 + trial;
            config.num_landmarks = std::min<std::size_t>(part.uniq(), 5);
            const auto result = generate_landmarks(space, config);
            CHECK(result.landmarks.size() == *config.num_landmarks);
            // Pairwise distinguishable landmarks.
            for (std::size_t i = 0; i < result.landmarks.size(); ++i)
                for (std::size_t j = i + 1; j < result.landmarks.size(); ++j)
                    CHECK(part.class_of[result.landmarks[i]] !=
                          part.class_of[result.landmarks[j]]);
            // Covering parameters never get worse as the prefix grows.
            for (std::size_t i = 1; i < result.per_step.size(); ++i) {
                CHECK(result.per_step[i].radius <= result.per_step[i - 1].radius);
                if (result.per_step[i].cardinality)
                    CHECK(*result.per_step[i].cardinality <=
                          *result.per_step[i - 1].cardinality);
            }
            // Determinism: identical config gives identical output.
            const auto again = generate_landmarks(space, config);
            CHECK(again.landmarks == result.landmarks);
        }
    }
}

TEST_CASE("random landmarks") {
    const auto space = line_1244();
    SamplerConfig config;
    config.procedure = Procedure::random_sample;
    config.num_landmarks = 3;
    config.rng_seed = 11;
    const auto result = random_landmarks(space, config);
    CHECK(result.landmarks.size() == 3);
    // All classes hit: a permutation of class representatives.
    std::vector<index_t> sorted = result.landmarks;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<index_t>{0, 1, 2});

    config.num_landmarks = 4;
    CHECK_THROWS_AS(random_landmarks(space, config), error);
}

TEST_CASE("asymmetric spaces run end to end") {
    // Shortest-path style asymmetric dissimilarity.
    const std::vector<double> m{0, 2, 9, 4,
                                7, 0, 1, 6,
                                3, 8, 0, 2,
                                5, 1, 4, 0};
    const auto space = build_space(m, 4, false);
    for (const auto procedure : {Procedure::maxmin, Procedure::lastfirst}) {
        SamplerConfig config;
        config.procedure = procedure;
        config.seed_point = 0;
        config.num_landmarks = 3;
        const auto result = generate_landmarks(space, config);
        CHECK(result.landmarks.size() == 3);
        const auto want =
            oracle::landmarks(space, procedure, RankVariant::check, TieRule::first_index, 0, 3);
        CHECK(result.landmarks == want);
    }

    // Random directed dissimilarities: oracle agreement, per-step
    // monotonicity, and cover minimality all carry over.
    Rng rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 6 + rng.uniform_index(10);
        std::vector<double> values(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) values[i * n + j] = rng.uniform(0.1, 5.0);
        const auto directed = build_space(values, n, false);
        for (const auto procedure : {Procedure::maxmin, Procedure::lastfirst}) {
            for (const auto rule : {TieRule::first_index, TieRule::iterative_refinement}) {
                SamplerConfig config;
                config.procedure = procedure;
                config.seed_point = rng.uniform_index(n) % n;
                config.num_landmarks = 3;
                config.tie_rule = rule;
                const auto got = generate_landmarks(directed, config);
                const auto want = oracle::landmarks(directed, procedure, RankVariant::check,
                                                    rule, *config.seed_point, 3);
                CHECK(got.landmarks == want);
                for (std::size_t i = 1; i < got.per_step.size(); ++i)
                    CHECK(got.per_step[i].radius <= got.per_step[i - 1].radius);
            }
        }
    }
}

TEST_CASE("cover extension arithmetic") {
    LandmarkResult fake;
    fake.procedure = Procedure::maxmin;
    fake.landmarks = {0};
    fake.per_step = {{0, 2.0, std::nullopt}};
    fake.final_radius = 2.0;
    const auto space = euclidean_space({0.0, 1.0, 3.0}, 3, 1);
    const auto cover = build_cover(space, fake, CoverKind::ball, 0.5, 0.1);
    CHECK(cover.effective_param == doctest::Approx(3.1));

    LandmarkResult lf;
    lf.procedure = Procedure::lastfirst;
    lf.landmarks = {0};
    lf.per_step = {{0, 3.0, 10}};
    lf.final_radius = 3.0;
    lf.final_cardinality = 10;
    const auto ncover = build_cover(space, lf, CoverKind::neighborhood, 1.0, 0.0);
    CHECK(ncover.effective_param == doctest::Approx(20.0));
}

TEST_CASE("unextended covers are conditionally minimal") {
    Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = random_space(rng, trial % 2 == 0);
        const auto uniq = colocation(space).uniq();
        if (uniq < 3) continue;
        SamplerConfig config;
        config.num_landmarks = std::min<std::size_t>(4, uniq - 1);

        config.procedure = Procedure::maxmin;
        const auto mm = maxmin_landmarks(space, config);
        const auto cover = build_cover(space, mm, CoverKind::ball);
        std::vector<char> covered(space.size(), 0);
        for (const auto& s : cover.sets)
            for (index_t x : s) covered[x] = 1;
        CHECK(std::count(covered.begin(), covered.end(), 1) ==
              static_cast<long>(space.size()));
        // Shrinking to the next realized distance uncovers something.
        double next_smaller = -1.0;
        for (index_t l : mm.landmarks)
            for (index_t x = 0; x < space.size(); ++x) {
                const double dv = space.dissim(l, x);
                if (dv < mm.final_radius) next_smaller = std::max(next_smaller, dv);
            }
        if (next_smaller >= 0.0) {
            const auto shrunk = ball_cover_sets(space, mm.landmarks, next_smaller);
            std::vector<char> still(space.size(), 0);
            for (const auto& s : shrunk)
                for (index_t x : s) still[x] = 1;
            CHECK(std::count(still.begin(), still.end(), 1) <
                  static_cast<long>(space.size()));
        }

        config.procedure = Procedure::lastfirst;
        const auto lf = lastfirst_landmarks(space, config);
        const std::size_t kmin = *lf.final_cardinality;
        const auto full = neighborhood_cover_sets(space, lf.landmarks,
                                                  static_cast<double>(kmin));
        std::vector<char> kcov(space.size(), 0);
        for (const auto& s : full)
            for (index_t x : s) kcov[x] = 1;
        CHECK(std::count(kcov.begin(), kcov.end(), 1) == static_cast<long>(space.size()));
        if (kmin > 0) {
            const auto shrunk = neighborhood_cover_sets(space, lf.landmarks,
                                                        static_cast<double>(kmin - 1));
            std::vector<char> still(space.size(), 0);
            for (const auto& s : shrunk)
                for (index_t x : s) still[x] = 1;
            CHECK(std::count(still.begin(), still.end(), 1) <
                  static_cast<long>(space.size()));
        }
    }
}

TEST_CASE("fuzzy membership sums to one") {
    const auto space = line_1244();
    SamplerConfig config;
    config.procedure = Procedure::maxmin;
    config.seed_point = a;
    config.num_landmarks = 2;
    const auto result = maxmin_landmarks(space, config);
    const auto cover = build_cover(space, result, CoverKind::ball, 1.0, 0.0);
    for (index_t x = 0; x < space.size(); ++x) {
        double total = 0.0;
        for (std::size_t j = 0; j < cover.sets.size(); ++j) total += cover.membership(x, j);
        CHECK(total == doctest::Approx(1.0));
    }
}

TEST_CASE("config validation") {
    SamplerConfig config;
    config.procedure = Procedure::maxmin;
    CHECK_THROWS_AS(maxmin_landmarks(line_1244(), config), error);
    config.procedure = Procedure::lastfirst;
    CHECK_THROWS_AS(lastfirst_landmarks(line_1244(), config), error);
    config.procedure = Procedure::random_sample;
    CHECK_THROWS_AS(random_landmarks(line_1244(), config), error);
}
