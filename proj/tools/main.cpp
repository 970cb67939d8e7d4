// lmk: landmark sampling and cover analysis for finite dissimilarity spaces.
//
// Subcommands: gen, landmarks, sweep, inn, bench. Every file-producing run
// also writes <out>.manifest.json; re-running the manifest's replay_argv
// reproduces the outputs byte for byte. Exit codes: 2 unreadable/malformed
// input, 3 bad configuration, 4 degenerate input data.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "alloc_tracker.hpp"
#include "lmk/complex.hpp"
#include "lmk/evalmetrics.hpp"
#include "lmk/io.hpp"
#include "lmk/synth.hpp"
#include "manifest.hpp"

using namespace lmk;
using lmk_cli::RunManifest;

namespace {

int exit_code_for(errc code) {
    switch (code) {
        case errc::parse:
        case errc::non_square:
        case errc::mixed_type_column:
            return 2;
        case errc::negative_entry:
        case errc::relative_rank_violation:
        case errc::asymmetry_under_symmetric_flag:
        case errc::empty_input:
        case errc::empty_space:
        case errc::zero_vector:
        case errc::zero_range:
        case errc::too_many_requested:
        case errc::degenerate_labels:
        case errc::degenerate_fold:
        case errc::single_period:
        case errc::insufficient_training:
        case errc::single_set:
        case errc::empty_cover:
            return 4;
        default:
            return 3;
    }
}

std::size_t worker_count() {
    if (const char* env = std::getenv("LMK_THREADS")) {
        const long n = std::atol(env);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    return 1;
}

// Runs fn(i) for i in [0, n) across the worker pool; results must be
// written into pre-sized slots so output order is independent of timing.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t threads = std::min(worker_count(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

void write_text(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::parse, "cannot write " + path);
    out << contents;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t>& seed, std::vector<std::string>& replay) {
    if (!seed) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::cerr << "derived rng seed " << *seed << "\n";
        replay.push_back("--rng-seed");
        replay.push_back(std::to_string(*seed));
    }
    return *seed;
}

// Shared space-loading flags for commands that ingest data files.
struct SpaceInput {
    std::string path;
    std::string kind = "coords";  // coords | matrix | gower
    bool symmetric = true;
    std::vector<std::string> types;
    double tolerance = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", path, "input data file")->required();
        cmd->add_option("--input-kind", kind, "coords | matrix | gower")
            ->check(CLI::IsMember({"coords", "matrix", "gower"}));
        cmd->add_option("--symmetric", symmetric,
                        "matrix input: whether the matrix is symmetric");
        cmd->add_option("--types", types, "gower input: per-column types (num/cat)")
            ->delimiter(',');
        cmd->add_option("--tolerance", tolerance, "co-location tolerance");
    }

    DissimilaritySpace load() const {
        if (kind == "matrix") return read_matrix_csv(path, symmetric, tolerance);
        if (kind == "gower") return read_gower_csv(path, types, tolerance);
        const auto cloud = read_coordinate_csv(path);
        return euclidean_space(cloud.coords, cloud.n, cloud.dim, tolerance);
    }
};

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    row += '\n';
    return row;
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    std::string generator;
    std::string out;
    std::optional<std::uint64_t> rng_seed;
    std::size_t n = 100;
    // bumpy
    double w0 = 0.05, mu2 = 3.14159265358979323846, sigma = 0.5235987755982988, ratio = 1.0;
    // necklace
    NecklaceParams necklace;
    // sphere
    std::string sphere_mode = "uniform";
    std::optional<double> alpha, beta;
    double pool_fraction = 1.0 / 6.0;
    // circle
    double noise_sd = 0.1;
};

int run_gen(GenArgs& args, RunManifest manifest) {
    resolve_seed(args.rng_seed, manifest.replay_argv);
    manifest.rng_seed = *args.rng_seed;

    PointCloud cloud;
    if (args.generator == "bumpy") {
        cloud = gen_bumpy_circle({args.n, args.w0, args.mu2, args.sigma, args.ratio,
                                  *args.rng_seed});
    } else if (args.generator == "necklace") {
        args.necklace.rng_seed = *args.rng_seed;
        cloud = gen_necklace(args.necklace);
    } else if (args.generator == "sphere") {
        SphereSampleParams p;
        p.n = args.n;
        p.pool_fraction = args.pool_fraction;
        p.rng_seed = *args.rng_seed;
        if (args.sphere_mode == "uniform") p.mode = SphereMode::uniform;
        else if (args.sphere_mode == "skewed") p.mode = SphereMode::skewed;
        else if (args.sphere_mode == "uniform-boosted") p.mode = SphereMode::uniform_boosted;
        else if (args.sphere_mode == "skewed-boosted") p.mode = SphereMode::skewed_boosted;
        else fail(errc::config, "unknown sphere mode: " + args.sphere_mode);
        // Exponent 4 when skew and boost act separately, 2 when combined.
        const double fallback = p.mode == SphereMode::skewed_boosted ? 2.0 : 4.0;
        p.alpha = args.alpha.value_or(fallback);
        p.beta = args.beta.value_or(fallback);
        cloud = gen_sphere(p);
    } else if (args.generator == "lattice") {
        cloud = gen_duplicated_lattice(args.n, *args.rng_seed);
    } else if (args.generator == "circle") {
        cloud = gen_noisy_circle(args.n, args.noise_sd, *args.rng_seed);
    } else {
        fail(errc::config, "unknown generator: " + args.generator);
    }

    if (args.out == "-") {
        std::cout << coordinate_csv(cloud);
        return 0;
    }
    write_coordinate_csv(args.out, cloud);
    manifest.outputs.push_back(args.out);
    manifest.write(args.out + ".manifest.json");
    return 0;
}

// ----------------------------------------------------------- landmarks ----

struct LandmarkArgs {
    SpaceInput input;
    std::string procedure = "maxmin";
    std::optional<std::size_t> num;
    bool exhaustive = false;
    std::optional<double> radius;
    std::optional<std::size_t> cardinality;
    std::string seed_rule = "first";
    std::string tie_rule = "first";
    std::string rank_variant = "check";
    std::string cover_kind;  // default depends on procedure
    double ext_mult = 0.0, ext_add = 0.0;
    std::optional<std::uint64_t> rng_seed;
    std::string out;
};

int run_landmarks(LandmarkArgs& args, RunManifest manifest) {
    resolve_seed(args.rng_seed, manifest.replay_argv);
    manifest.rng_seed = *args.rng_seed;
    manifest.add_input(args.input.path);

    const auto space = args.input.load();

    SamplerConfig config;
    config.procedure = procedure_from_name(args.procedure);
    config.seed_rule = seed_rule_from_name(args.seed_rule);
    config.tie_rule = tie_rule_from_name(args.tie_rule);
    config.rng_seed = *args.rng_seed;
    config.rank_variant = args.rank_variant == "hat" ? RankVariant::hat : RankVariant::check;
    config.num_landmarks = args.num;
    config.radius = args.radius;
    config.cardinality = args.cardinality;
    if (args.exhaustive) config.num_landmarks = colocation(space).uniq();

    const auto result = generate_landmarks(space, config);

    CoverKind kind = config.procedure == Procedure::lastfirst ? CoverKind::neighborhood
                                                              : CoverKind::ball;
    if (args.cover_kind == "ball") kind = CoverKind::ball;
    if (args.cover_kind == "neighborhood") kind = CoverKind::neighborhood;
    const auto cover =
        build_cover(space, result, kind, args.ext_mult, args.ext_add, config.rank_variant);

    write_text(args.out, landmark_result_json(config, result, cover));
    manifest.outputs.push_back(args.out);
    manifest.write(args.out + ".manifest.json");
    return 0;
}

// --------------------------------------------------------------- sweep ----

struct SweepArgs {
    std::size_t n = 60;
    double w0 = 0.05, mu2 = 3.14159265358979323846, sigma = 0.5235987755982988, ratio = 1.0;
    std::vector<std::string> procedures{"maxmin", "lastfirst"};
    std::vector<double> ext_mult{0.0};
    std::vector<double> ext_add{0.0};
    std::size_t m_max = 30;
    std::size_t replicates = 1;
    std::size_t target_b0 = 1, target_b1 = 1;
    std::optional<std::uint64_t> rng_seed;
    std::string out;
    std::string per_m_out;
};

int run_sweep(SweepArgs& args, RunManifest manifest) {
    resolve_seed(args.rng_seed, manifest.replay_argv);
    manifest.rng_seed = *args.rng_seed;

    struct Cell {
        Procedure procedure;
        double ext_mult;
        double ext_add;
    };
    std::vector<Cell> cells;
    for (const auto& proc : args.procedures)
        for (double em : args.ext_mult)
            for (double ea : args.ext_add)
                cells.push_back({procedure_from_name(proc), em, ea});

    // One fresh sample and sweep per (cell, replicate); outputs are ordered
    // by cell then replicate regardless of scheduling.
    struct CellResult {
        std::vector<PersistenceSweep> sweeps;
    };
    std::vector<CellResult> results(cells.size());
    parallel_for(cells.size(), [&](std::size_t ci) {
        const auto& cell = cells[ci];
        for (std::size_t rep = 0; rep < args.replicates; ++rep) {
            const std::uint64_t rep_seed = *args.rng_seed + rep;
            const auto cloud = gen_bumpy_circle(
                {args.n, args.w0, args.mu2, args.sigma, args.ratio, rep_seed});
            const auto space = euclidean_space(cloud.coords, cloud.n, cloud.dim);
            const auto uniq = colocation(space).uniq();

            SamplerConfig config;
            config.procedure = cell.procedure;
            config.rng_seed = rep_seed;

            SweepParams params;
            params.m_max = std::min(args.m_max, uniq);
            params.replicates = 1;
            params.ext_mult = cell.ext_mult;
            params.ext_add = cell.ext_add;
            params.kind = cell.procedure == Procedure::lastfirst ? CoverKind::neighborhood
                                                                 : CoverKind::ball;
            auto summary = landmark_persistence_sweep(
                space, config, {args.target_b0, args.target_b1}, params);
            results[ci].sweeps.push_back(std::move(summary.replicates.front()));
        }
    });

    std::ostringstream dominance;
    dominance << "procedure,ext_mult,ext_add,replicate,dominance_lo,dominance_hi,"
                 "dominance_len,detected_beta1\n";
    std::ostringstream per_m;
    per_m << "m,beta0,beta1,beta2,covered,procedure,ext_mult,ext_add,replicate\n";
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& cell = cells[ci];
        for (std::size_t rep = 0; rep < results[ci].sweeps.size(); ++rep) {
            const auto& sweep = results[ci].sweeps[rep];
            bool b1 = false;
            for (const auto& [m, betti] : sweep.per_m) {
                const bool covered =
                    betti[0] == args.target_b0 && betti[1] == args.target_b1;
                if (betti[1] == 1) b1 = true;
                per_m << csv_row({std::to_string(m), std::to_string(betti[0]),
                                  std::to_string(betti[1]), std::to_string(betti[2]),
                                  covered ? "1" : "0", procedure_name(cell.procedure),
                                  format_double(cell.ext_mult), format_double(cell.ext_add),
                                  std::to_string(rep)});
            }
            dominance << csv_row(
                {procedure_name(cell.procedure), format_double(cell.ext_mult),
                 format_double(cell.ext_add), std::to_string(rep),
                 std::to_string(sweep.dominance_lo), std::to_string(sweep.dominance_hi),
                 std::to_string(sweep.length()), b1 ? "1" : "0"});
        }
    }

    write_text(args.out, dominance.str());
    manifest.outputs.push_back(args.out);
    if (!args.per_m_out.empty()) {
        write_text(args.per_m_out, per_m.str());
        manifest.outputs.push_back(args.per_m_out);
    }
    manifest.write(args.out + ".manifest.json");
    return 0;
}

// ----------------------------------------------------------------- inn ----

struct InnArgs {
    SpaceInput input;
    std::string outcomes;
    std::string plan = "nested";
    std::vector<std::string> procedures{"random", "maxmin", "lastfirst"};
    std::vector<std::size_t> landmark_counts{36};
    std::vector<std::string> schemes{"rank", "triangle", "inverse", "gaussian"};
    std::size_t neighborhood_size = 180;
    std::size_t outer_folds = 6, inner_folds = 6;
    std::optional<std::uint64_t> rng_seed;
    std::string out;
};

int run_inn(InnArgs& args, RunManifest manifest) {
    resolve_seed(args.rng_seed, manifest.replay_argv);
    manifest.rng_seed = *args.rng_seed;
    manifest.add_input(args.input.path);
    manifest.add_input(args.outcomes);

    const auto space = args.input.load();
    const auto table = read_outcome_csv(args.outcomes, space.size());

    CvPlan plan;
    plan.outer_folds = args.outer_folds;
    plan.inner_folds = args.inner_folds;
    plan.rng_seed = *args.rng_seed;
    plan.neighborhood_size = args.neighborhood_size;

    std::ostringstream csv;
    if (args.plan == "nested") {
        std::vector<WeightingScheme> schemes;
        for (const auto& name : args.schemes)
            schemes.push_back({weight_kind_from_name(name), {}});
        csv << "procedure,n_landmarks,scheme,k,fold_outer,fold_inner,auroc\n";
        for (const auto& proc : args.procedures) {
            SamplerConfig config;
            config.procedure = procedure_from_name(proc);
            config.rng_seed = *args.rng_seed;
            const auto rows = nested_cv(space, table.outcomes, config, plan,
                                        args.landmark_counts, schemes);
            for (const auto& r : rows)
                csv << csv_row({proc, std::to_string(r.n_landmarks),
                                weight_kind_name(r.scheme), std::to_string(r.k),
                                std::to_string(r.fold_outer), std::to_string(r.fold_inner),
                                format_double(r.auroc)});
        }
    } else if (args.plan == "temporal") {
        require(!table.periods.empty(), errc::parse,
                "temporal plan needs a period column in the outcome file");
        csv << "procedure,n_landmarks,period,part,auroc\n";
        for (const auto& proc : args.procedures) {
            SamplerConfig config;
            config.procedure = procedure_from_name(proc);
            config.rng_seed = *args.rng_seed;
            const auto rows = temporal_cv(space, table.outcomes, table.periods, config, plan,
                                          args.landmark_counts);
            for (const auto& r : rows)
                csv << csv_row({proc, std::to_string(r.n_landmarks), r.period,
                                std::to_string(r.part), format_double(r.auroc)});
        }
    } else {
        fail(errc::config, "plan must be nested or temporal");
    }

    write_text(args.out, csv.str());
    manifest.outputs.push_back(args.out);
    manifest.write(args.out + ".manifest.json");
    return 0;
}

// ---------------------------------------------------------------- bench ----

struct BenchArgs {
    std::string generator = "circle";
    std::vector<std::size_t> sizes{250, 500, 1000};
    std::vector<std::string> procedures{"maxmin", "lastfirst"};
    std::size_t repeats = 3;
    std::size_t num_landmarks = 60;
    double noise_sd = 0.1;
    double timeout_seconds = 3600.0;
    std::optional<std::uint64_t> rng_seed;
    std::string out;
};

int run_bench(BenchArgs& args, RunManifest manifest) {
    resolve_seed(args.rng_seed, manifest.replay_argv);
    manifest.rng_seed = *args.rng_seed;
    require(std::is_sorted(args.sizes.begin(), args.sizes.end()), errc::config,
            "sizes must be ascending");

    std::ostringstream csv;
    csv << "generator,size,procedure,repeat,seconds,peak_bytes,status\n";
    for (const auto& proc : args.procedures) {
        bool timed_out = false;
        for (std::size_t size : args.sizes) {
            if (timed_out) {
                for (std::size_t rep = 0; rep < args.repeats; ++rep)
                    csv << csv_row({args.generator, std::to_string(size), proc,
                                    std::to_string(rep), "", "", "skipped"});
                continue;
            }
            PointCloud cloud;
            if (args.generator == "circle")
                cloud = gen_noisy_circle(size, args.noise_sd, *args.rng_seed);
            else if (args.generator == "lattice")
                cloud = gen_duplicated_lattice(size, *args.rng_seed);
            else if (args.generator == "bumpy")
                cloud = gen_bumpy_circle({size, 0.05, 3.14159265358979323846,
                                          0.5235987755982988, 10.0, *args.rng_seed});
            else
                fail(errc::config, "unknown benchmark generator: " + args.generator);
            const auto space = euclidean_space(cloud.coords, cloud.n, cloud.dim);
            const auto uniq = colocation(space).uniq();

            SamplerConfig config;
            config.procedure = procedure_from_name(proc);
            config.rng_seed = *args.rng_seed;
            config.num_landmarks = std::min(args.num_landmarks, uniq);

            generate_landmarks(space, config);  // warm-up, not recorded
            for (std::size_t rep = 0; rep < args.repeats; ++rep) {
                lmk_bench::reset_peak();
                const auto t0 = std::chrono::steady_clock::now();
                generate_landmarks(space, config);
                const auto t1 = std::chrono::steady_clock::now();
                const double seconds = std::chrono::duration<double>(t1 - t0).count();
                const std::size_t peak =
                    lmk_bench::peak_bytes() - lmk_bench::current_bytes();
                if (seconds > args.timeout_seconds) {
                    csv << csv_row({args.generator, std::to_string(size), proc,
                                    std::to_string(rep), "", "", "timeout"});
                    timed_out = true;
                    break;
                }
                csv << csv_row({args.generator, std::to_string(size), proc,
                                std::to_string(rep), format_double(seconds),
                                std::to_string(peak), "ok"});
            }
        }
    }

    write_text(args.out, csv.str());
    manifest.outputs.push_back(args.out);
    manifest.write(args.out + ".manifest.json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"landmark sampling and cover analysis for finite dissimilarity spaces"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate synthetic datasets as coordinate CSV");
    gen->add_option("generator", gen_args.generator,
                    "bumpy | necklace | sphere | lattice | circle")
        ->required();
    gen->add_option("--n", gen_args.n, "sample size");
    gen->add_option("--w0", gen_args.w0, "bumpy: uniform mixture weight");
    gen->add_option("--mu2", gen_args.mu2, "bumpy: second Gaussian center (radians)");
    gen->add_option("--sigma", gen_args.sigma, "bumpy: Gaussian spread (radians)");
    gen->add_option("--ratio", gen_args.ratio, "bumpy: Gaussian weight ratio w1/w2");
    gen->add_option("--n-string", gen_args.necklace.n_string, "necklace: string sample size");
    gen->add_option("--n-beads", gen_args.necklace.n_beads, "necklace: points per bead");
    gen->add_option("--bead-count", gen_args.necklace.bead_count, "necklace: bead count");
    gen->add_option("--string-radius", gen_args.necklace.string_radius,
                    "necklace: string radius");
    gen->add_option("--bead-radius", gen_args.necklace.bead_radius, "necklace: bead radius");
    gen->add_option("--mode", gen_args.sphere_mode,
                    "sphere: uniform | skewed | uniform-boosted | skewed-boosted");
    gen->add_option("--alpha", gen_args.alpha, "sphere: rejection skew exponent");
    gen->add_option("--beta", gen_args.beta, "sphere: boost skew exponent");
    gen->add_option("--pool-fraction", gen_args.pool_fraction, "sphere: boost pool fraction");
    gen->add_option("--noise-sd", gen_args.noise_sd, "circle: Gaussian noise sd");
    gen->add_option("--rng-seed", gen_args.rng_seed, "rng seed (derived if omitted)");
    gen->add_option("--out", gen_args.out, "output file, or - for stdout")->required();

    LandmarkArgs lm_args;
    auto* lm = app.add_subcommand("landmarks", "select landmarks and build a cover");
    lm_args.input.attach(lm);
    lm->add_option("--procedure", lm_args.procedure, "maxmin | lastfirst | random");
    lm->add_option("--num", lm_args.num, "number of landmarks");
    lm->add_flag("--exhaustive", lm_args.exhaustive,
                 "one landmark per co-location class");
    lm->add_option("--radius", lm_args.radius, "maxmin: stop once this radius covers");
    lm->add_option("--cardinality", lm_args.cardinality,
                   "lastfirst: stop once this cardinality covers");
    lm->add_option("--seed-rule", lm_args.seed_rule, "first | random | chebyshev");
    lm->add_option("--tie-rule", lm_args.tie_rule, "first | random | refine");
    lm->add_option("--rank-variant", lm_args.rank_variant, "check | hat");
    lm->add_option("--cover", lm_args.cover_kind,
                   "ball | neighborhood (default by procedure)");
    lm->add_option("--ext-mult", lm_args.ext_mult, "multiplicative cover extension");
    lm->add_option("--ext-add", lm_args.ext_add, "additive cover extension");
    lm->add_option("--rng-seed", lm_args.rng_seed, "rng seed (derived if omitted)");
    lm->add_option("--out", lm_args.out, "output JSON file")->required();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep", "landmark persistence sweep over bumpy-circle samples");
    sweep->add_option("--n", sweep_args.n, "sample size");
    sweep->add_option("--w0", sweep_args.w0, "uniform mixture weight");
    sweep->add_option("--mu2", sweep_args.mu2, "second Gaussian center (radians)");
    sweep->add_option("--sigma", sweep_args.sigma, "Gaussian spread (radians)");
    sweep->add_option("--ratio", sweep_args.ratio, "Gaussian weight ratio w1/w2");
    sweep->add_option("--procedures", sweep_args.procedures, "procedures to run")
        ->delimiter(',');
    sweep->add_option("--ext-mult", sweep_args.ext_mult, "multiplicative extensions")
        ->delimiter(',');
    sweep->add_option("--ext-add", sweep_args.ext_add, "additive extensions")
        ->delimiter(',');
    sweep->add_option("--m-max", sweep_args.m_max, "largest landmark prefix");
    sweep->add_option("--replicates", sweep_args.replicates, "replicates per cell");
    sweep->add_option("--target-b0", sweep_args.target_b0, "target Betti 0");
    sweep->add_option("--target-b1", sweep_args.target_b1, "target Betti 1");
    sweep->add_option("--rng-seed", sweep_args.rng_seed, "rng seed (derived if omitted)");
    sweep->add_option("--out", sweep_args.out, "dominance CSV output")->required();
    sweep->add_option("--per-m-out", sweep_args.per_m_out, "per-prefix Betti CSV output");

    InnArgs inn_args;
    auto* inn = app.add_subcommand("inn", "interpolative nearest-neighbor cross-validation");
    inn_args.input.attach(inn);
    inn->add_option("--outcomes", inn_args.outcomes, "outcome CSV (point_id,outcome[,period])")
        ->required();
    inn->add_option("--plan", inn_args.plan, "nested | temporal");
    inn->add_option("--procedures", inn_args.procedures, "procedures to compare")
        ->delimiter(',');
    inn->add_option("--landmark-counts", inn_args.landmark_counts, "landmark set sizes")
        ->delimiter(',');
    inn->add_option("--schemes", inn_args.schemes,
                    "weighting schemes: rank | triangle | inverse | gaussian")
        ->delimiter(',');
    inn->add_option("--neighborhood-size", inn_args.neighborhood_size,
                    "profiled neighborhood size");
    inn->add_option("--outer-folds", inn_args.outer_folds, "outer fold count");
    inn->add_option("--inner-folds", inn_args.inner_folds,
                    "inner fold count (parts per period in temporal mode)");
    inn->add_option("--rng-seed", inn_args.rng_seed, "rng seed (derived if omitted)");
    inn->add_option("--out", inn_args.out, "AUROC CSV output")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "wall-clock and allocation benchmarks");
    bench->add_option("--generator", bench_args.generator, "circle | lattice | bumpy");
    bench->add_option("--sizes", bench_args.sizes, "ascending sample sizes")
        ->delimiter(',');
    bench->add_option("--procedures", bench_args.procedures, "procedures to time")
        ->delimiter(',');
    bench->add_option("--repeats", bench_args.repeats, "recorded repeats per cell");
    bench->add_option("--num-landmarks", bench_args.num_landmarks, "landmarks per run");
    bench->add_option("--noise-sd", bench_args.noise_sd, "circle generator noise");
    bench->add_option("--timeout-seconds", bench_args.timeout_seconds,
                      "per-cell timeout; larger sizes are skipped after a timeout");
    bench->add_option("--rng-seed", bench_args.rng_seed, "rng seed (derived if omitted)");
    bench->add_option("--out", bench_args.out, "timing CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    RunManifest manifest;
    manifest.argv.assign(argv, argv + argc);
    manifest.replay_argv = manifest.argv;

    try {
        if (gen->parsed()) {
            manifest.command = "gen";
            return run_gen(gen_args, std::move(manifest));
        }
        if (lm->parsed()) {
            manifest.command = "landmarks";
            return run_landmarks(lm_args, std::move(manifest));
        }
        if (sweep->parsed()) {
            manifest.command = "sweep";
            return run_sweep(sweep_args, std::move(manifest));
        }
        if (inn->parsed()) {
            manifest.command = "inn";
            return run_inn(inn_args, std::move(manifest));
        }
        if (bench->parsed()) {
            manifest.command = "bench";
            return run_bench(bench_args, std::move(manifest));
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
