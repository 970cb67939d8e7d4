// Python bindings for the core operations: spaces, ranks, landmark
// samplers, covers, nerves, evaluation metrics, and data generators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "lmk/complex.hpp"
#include "lmk/evalmetrics.hpp"
#include "lmk/io.hpp"
#include "lmk/synth.hpp"

namespace py = pybind11;
using namespace lmk;

namespace {

RankVariant variant_from(const std::string& name) {
    if (name == "check") return RankVariant::check;
    if (name == "hat") return RankVariant::hat;
    fail(errc::config, "rank variant must be check or hat");
}

Direction direction_from(const std::string& name) {
    if (name == "out") return Direction::out;
    if (name == "in") return Direction::in;
    fail(errc::config, "direction must be out or in");
}

CoverKind cover_kind_from(const std::string& name) {
    if (name == "ball") return CoverKind::ball;
    if (name == "neighborhood") return CoverKind::neighborhood;
    fail(errc::config, "cover kind must be ball or neighborhood");
}

std::pair<std::vector<double>, std::pair<std::size_t, std::size_t>> flatten(
    const std::vector<std::vector<double>>& rows) {
    require(!rows.empty(), errc::empty_input, "point table is empty");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (const auto& row : rows) {
        require(row.size() == dim, errc::length_mismatch, "ragged point table");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return {std::move(flat), {rows.size(), dim}};
}

std::vector<std::vector<double>> unflatten(const PointCloud& cloud) {
    std::vector<std::vector<double>> rows(cloud.n);
    for (std::size_t i = 0; i < cloud.n; ++i)
        rows[i].assign(cloud.coords.begin() + i * cloud.dim,
                       cloud.coords.begin() + (i + 1) * cloud.dim);
    return rows;
}

SamplerConfig make_config(const std::string& procedure, std::optional<std::size_t> num,
                          std::optional<double> radius, std::optional<std::size_t> cardinality,
                          const std::string& seed_rule, const std::string& tie_rule,
                          std::uint64_t rng_seed, const std::string& rank_variant,
                          std::optional<index_t> seed_point) {
    SamplerConfig config;
    config.procedure = procedure_from_name(procedure);
    config.num_landmarks = num;
    config.radius = radius;
    config.cardinality = cardinality;
    config.seed_rule = seed_rule_from_name(seed_rule);
    config.tie_rule = tie_rule_from_name(tie_rule);
    config.rng_seed = rng_seed;
    config.rank_variant = variant_from(rank_variant);
    config.seed_point = seed_point;
    return config;
}

}  // namespace

PYBIND11_MODULE(lmk, m) {
    m.doc() = "Landmark sampling and cover analysis for finite dissimilarity spaces";

    py::register_exception<error>(m, "LmkError");

    py::class_<DissimilaritySpace>(m, "DissimilaritySpace")
        .def_property_readonly("size", &DissimilaritySpace::size)
        .def_property_readonly("symmetric", &DissimilaritySpace::symmetric)
        .def_property_readonly("colocation_tolerance",
                               &DissimilaritySpace::colocation_tolerance)
        .def("dissim", &DissimilaritySpace::dissim, py::arg("i"), py::arg("j"))
        .def("__len__", &DissimilaritySpace::size);

    m.def(
        "build_space",
        [](const std::vector<std::vector<double>>& matrix, bool symmetric, double tolerance) {
            auto [flat, shape] = flatten(matrix);
            require(shape.first == shape.second, errc::non_square, "matrix is not square");
            return build_space(flat, shape.first, symmetric, tolerance);
        },
        py::arg("matrix"), py::arg("symmetric") = true, py::arg("tolerance") = 0.0);

    m.def(
        "euclidean_space",
        [](const std::vector<std::vector<double>>& points, double tolerance) {
            auto [flat, shape] = flatten(points);
            return euclidean_space(flat, shape.first, shape.second, tolerance);
        },
        py::arg("points"), py::arg("tolerance") = 0.0);

    m.def(
        "cosine_distance_space",
        [](const std::vector<std::vector<double>>& points, double tolerance) {
            auto [flat, shape] = flatten(points);
            return cosine_distance_space(flat, shape.first, shape.second, tolerance);
        },
        py::arg("points"), py::arg("tolerance") = 0.0);

    m.def("colocation_classes", [](const DissimilaritySpace& space) {
        return colocation(space).classes;
    });

    m.def(
        "out_rank",
        [](const DissimilaritySpace& space, index_t x, index_t y, const std::string& variant) {
            return out_rank(space, variant_from(variant), x, y);
        },
        py::arg("space"), py::arg("x"), py::arg("y"), py::arg("variant") = "check");

    m.def(
        "rank_row",
        [](const DissimilaritySpace& space, index_t x, const std::string& variant) {
            return rank_row(space, variant_from(variant), x);
        },
        py::arg("space"), py::arg("x"), py::arg("variant") = "check");

    m.def(
        "k_neighborhood",
        [](const DissimilaritySpace& space, index_t x, std::size_t k,
           const std::string& direction, const std::string& variant) {
            return k_neighborhood(space, variant_from(variant), direction_from(direction), x, k);
        },
        py::arg("space"), py::arg("x"), py::arg("k"), py::arg("direction") = "out",
        py::arg("variant") = "check");

    m.def("nearest_neighborhood", &nearest_neighborhood, py::arg("space"), py::arg("x"),
          py::arg("k"));

    m.def(
        "rank_sequence",
        [](const DissimilaritySpace& space, index_t x, const std::string& direction,
           const std::string& variant, std::optional<std::vector<index_t>> restrict_to) {
            const auto seq =
                restrict_to ? rank_sequence(space, variant_from(variant),
                                            direction_from(direction), x, *restrict_to)
                            : rank_sequence(space, variant_from(variant),
                                            direction_from(direction), x);
            return seq.values;
        },
        py::arg("space"), py::arg("x"), py::arg("direction") = "out",
        py::arg("variant") = "check", py::arg("restrict") = std::nullopt);

    m.def("revlex_compare", [](const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
        return revlex_compare(RankSequence{a}, RankSequence{b});
    });

    m.def("maxmin_set", &maxmin_set, py::arg("space"), py::arg("landmarks"));
    m.def(
        "lastfirst_set",
        [](const DissimilaritySpace& space, const std::vector<index_t>& landmarks,
           const std::string& variant) {
            return lastfirst_set(space, landmarks, variant_from(variant));
        },
        py::arg("space"), py::arg("landmarks"), py::arg("variant") = "check");
    m.def("covering_radius", &covering_radius, py::arg("space"), py::arg("landmarks"));
    m.def(
        "covering_cardinality",
        [](const DissimilaritySpace& space, const std::vector<index_t>& landmarks,
           const std::string& variant) {
            return covering_cardinality(space, landmarks, variant_from(variant));
        },
        py::arg("space"), py::arg("landmarks"), py::arg("variant") = "check");

    py::class_<LandmarkStep>(m, "LandmarkStep")
        .def_readonly("landmark", &LandmarkStep::landmark)
        .def_readonly("radius", &LandmarkStep::radius)
        .def_readonly("cardinality", &LandmarkStep::cardinality);

    py::class_<LandmarkResult>(m, "LandmarkResult")
        .def_readonly("landmarks", &LandmarkResult::landmarks)
        .def_readonly("per_step", &LandmarkResult::per_step)
        .def_readonly("final_radius", &LandmarkResult::final_radius)
        .def_readonly("final_cardinality", &LandmarkResult::final_cardinality);

    m.def(
        "landmarks",
        [](const DissimilaritySpace& space, const std::string& procedure,
           std::optional<std::size_t> num, std::optional<double> radius,
           std::optional<std::size_t> cardinality, const std::string& seed_rule,
           const std::string& tie_rule, std::uint64_t rng_seed,
           const std::string& rank_variant, std::optional<index_t> seed_point) {
            return generate_landmarks(
                space, make_config(procedure, num, radius, cardinality, seed_rule, tie_rule,
                                   rng_seed, rank_variant, seed_point));
        },
        py::arg("space"), py::arg("procedure") = "maxmin", py::arg("num") = std::nullopt,
        py::arg("radius") = std::nullopt, py::arg("cardinality") = std::nullopt,
        py::arg("seed_rule") = "first", py::arg("tie_rule") = "first", py::arg("rng_seed") = 0,
        py::arg("rank_variant") = "check", py::arg("seed_point") = std::nullopt);

    py::class_<Cover>(m, "Cover")
        .def_readonly("sets", &Cover::sets)
        .def_readonly("ext_mult", &Cover::ext_mult)
        .def_readonly("ext_add", &Cover::ext_add)
        .def_readonly("effective_param", &Cover::effective_param)
        .def("membership", &Cover::membership, py::arg("point"), py::arg("set"))
        .def_property_readonly("num_points", &Cover::num_points);

    m.def(
        "build_cover",
        [](const DissimilaritySpace& space, const LandmarkResult& result,
           const std::string& kind, double ext_mult, double ext_add,
           const std::string& variant) {
            return build_cover(space, result, cover_kind_from(kind), ext_mult, ext_add,
                               variant_from(variant));
        },
        py::arg("space"), py::arg("result"), py::arg("kind") = "ball",
        py::arg("ext_mult") = 0.0, py::arg("ext_add") = 0.0, py::arg("variant") = "check");

    py::class_<SimplicialComplex>(m, "SimplicialComplex")
        .def_readonly("vertices", &SimplicialComplex::vertices)
        .def_readonly("dim_cap", &SimplicialComplex::dim_cap)
        .def_readonly("simplices", &SimplicialComplex::simplices)
        .def("count", &SimplicialComplex::count, py::arg("dim"));

    m.def("nerve", &nerve, py::arg("cover"), py::arg("dim_cap") = 3);
    m.def("betti", &betti, py::arg("complex"), py::arg("max_dim"));

    m.def("mpc", &mpc, py::arg("cover"));
    m.def("cover_risk_scores", &cover_risk_scores, py::arg("cover"), py::arg("outcomes"));
    m.def("auroc", &auroc, py::arg("scores"), py::arg("labels"));

    m.def(
        "gen_bumpy_circle",
        [](std::size_t n, double w0, double mu2, double sigma, double ratio,
           std::uint64_t rng_seed) {
            return unflatten(gen_bumpy_circle({n, w0, mu2, sigma, ratio, rng_seed}));
        },
        py::arg("n"), py::arg("w0") = 0.05, py::arg("mu2") = 3.14159265358979323846,
        py::arg("sigma") = 0.5235987755982988, py::arg("ratio") = 1.0, py::arg("rng_seed") = 0);

    m.def(
        "gen_necklace",
        [](std::size_t n_string, std::size_t n_beads, std::size_t bead_count,
           double string_radius, double bead_radius, std::uint64_t rng_seed) {
            return unflatten(gen_necklace(
                {n_string, n_beads, bead_count, string_radius, bead_radius, rng_seed}));
        },
        py::arg("n_string") = 120, py::arg("n_beads") = 180, py::arg("bead_count") = 6,
        py::arg("string_radius") = 1.0, py::arg("bead_radius") = 0.15, py::arg("rng_seed") = 0);

    m.def(
        "gen_sphere",
        [](std::size_t n, const std::string& mode, double alpha, double beta,
           double pool_fraction, std::uint64_t rng_seed) {
            SphereSampleParams p;
            p.n = n;
            p.alpha = alpha;
            p.beta = beta;
            p.pool_fraction = pool_fraction;
            p.rng_seed = rng_seed;
            if (mode == "uniform") p.mode = SphereMode::uniform;
            else if (mode == "skewed") p.mode = SphereMode::skewed;
            else if (mode == "uniform_boosted") p.mode = SphereMode::uniform_boosted;
            else if (mode == "skewed_boosted") p.mode = SphereMode::skewed_boosted;
            else fail(errc::config, "unknown sphere mode: " + mode);
            return unflatten(gen_sphere(p));
        },
        py::arg("n"), py::arg("mode") = "uniform", py::arg("alpha") = 4.0,
        py::arg("beta") = 4.0, py::arg("pool_fraction") = 1.0 / 6.0, py::arg("rng_seed") = 0);

    m.def(
        "gen_duplicated_lattice",
        [](std::size_t n, std::uint64_t rng_seed) {
            return unflatten(gen_duplicated_lattice(n, rng_seed));
        },
        py::arg("n"), py::arg("rng_seed") = 0);

    m.def(
        "gen_noisy_circle",
        [](std::size_t n, double noise_sd, std::uint64_t rng_seed) {
            return unflatten(gen_noisy_circle(n, noise_sd, rng_seed));
        },
        py::arg("n"), py::arg("noise_sd") = 0.1, py::arg("rng_seed") = 0);
}
