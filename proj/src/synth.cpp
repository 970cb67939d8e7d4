#include "lmk/synth.hpp"

#include <algorithm>
#include <cmath>

namespace lmk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

}  // namespace

PointCloud gen_bumpy_circle(const BumpyCircleParams& params) {
    require(params.n > 0, errc::empty_input, "sample size must be positive");
    require(params.w0 >= 0.0 && params.w0 <= 1.0, errc::invalid_weights,
            "uniform weight must lie in [0, 1]");
    require(params.ratio > 0.0, errc::invalid_weights, "Gaussian weight ratio must be positive");
    require(params.sigma > 0.0, errc::invalid_weights, "sigma must be positive");

    const double w2 = (1.0 - params.w0) / (1.0 + params.ratio);
    const double w1 = params.ratio * w2;

    Rng rng(params.rng_seed);
    PointCloud cloud;
    cloud.n = params.n;
    cloud.dim = 2;
    cloud.coords.reserve(2 * params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double pick = rng.uniform();
        double t;
        if (pick < params.w0)
            t = rng.uniform(0.0, kTwoPi);
        else if (pick < params.w0 + w1)
            t = wrap_angle(rng.normal(0.0, params.sigma));
        else
            t = wrap_angle(rng.normal(params.mu2, params.sigma));
        cloud.coords.push_back(std::cos(t));
        cloud.coords.push_back(std::sin(t));
    }
    return cloud;
}

PointCloud gen_necklace(const NecklaceParams& params) {
    require(params.string_radius > 0.0 && params.bead_radius > 0.0, errc::invalid_geometry,
            "radii must be positive");
    require(params.n_string > 0, errc::invalid_geometry, "string sample must be nonempty");

    Rng rng(params.rng_seed);
    PointCloud cloud;
    cloud.dim = 2;
    for (std::size_t i = 0; i < params.n_string; ++i) {
        const double t = rng.uniform(0.0, kTwoPi);
        cloud.coords.push_back(params.string_radius * std::cos(t));
        cloud.coords.push_back(params.string_radius * std::sin(t));
    }
    for (std::size_t b = 0; b < params.bead_count; ++b) {
        const double centre_angle = kTwoPi * static_cast<double>(b) /
                                    static_cast<double>(params.bead_count);
        const double cx = params.string_radius * std::cos(centre_angle);
        const double cy = params.string_radius * std::sin(centre_angle);
        for (std::size_t i = 0; i < params.n_beads; ++i) {
            const double t = rng.uniform(0.0, kTwoPi);
            cloud.coords.push_back(cx + params.bead_radius * std::cos(t));
            cloud.coords.push_back(cy + params.bead_radius * std::sin(t));
        }
    }
    cloud.n = cloud.coords.size() / 2;
    return cloud;
}

namespace {

// Area-uniform point on the unit sphere: z uniform on [-1, 1], azimuth
// uniform on [0, 2 pi).
void push_uniform_sphere_point(Rng& rng, std::vector<double>& coords) {
    const double z = rng.uniform(-1.0, 1.0);
    const double theta = rng.uniform(0.0, kTwoPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    coords.push_back(r * std::cos(theta));
    coords.push_back(r * std::sin(theta));
    coords.push_back(z);
}

double polar_angle(const double* p) { return std::acos(std::clamp(p[2], -1.0, 1.0)); }

std::vector<double> sample_sphere_raw(std::size_t n, bool skewed, double alpha, Rng& rng) {
    std::vector<double> coords;
    coords.reserve(3 * n);
    while (coords.size() < 3 * n) {
        push_uniform_sphere_point(rng, coords);
        if (skewed) {
            const double phi = polar_angle(&coords[coords.size() - 3]);
            const double t = rng.uniform();
            if (std::pow(phi / kPi, alpha) < t) coords.resize(coords.size() - 3);
        }
    }
    return coords;
}

}  // namespace

PointCloud gen_sphere(const SphereSampleParams& params) {
    require(params.n > 0, errc::empty_input, "sample size must be positive");
    require(params.alpha > 0.0 && params.beta > 0.0, errc::invalid_weights,
            "skew exponents must be positive");

    Rng rng(params.rng_seed);
    PointCloud cloud;
    cloud.n = params.n;
    cloud.dim = 3;

    const bool boosted =
        params.mode == SphereMode::uniform_boosted || params.mode == SphereMode::skewed_boosted;
    const bool skewed =
        params.mode == SphereMode::skewed || params.mode == SphereMode::skewed_boosted;

    if (!boosted) {
        cloud.coords = sample_sphere_raw(params.n, skewed, params.alpha, rng);
        return cloud;
    }

    const std::size_t pool_size = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(params.pool_fraction *
                                                 static_cast<double>(params.n))));
    const std::vector<double> pool = sample_sphere_raw(pool_size, skewed, params.alpha, rng);

    // Resample with replacement, mass proportional to (phi/pi)^beta.
    std::vector<double> cumulative(pool_size);
    double total = 0.0;
    for (std::size_t i = 0; i < pool_size; ++i) {
        total += std::pow(polar_angle(&pool[3 * i]) / kPi, params.beta);
        cumulative[i] = total;
    }
    require(total > 0.0, errc::invalid_weights, "boost weights vanish on the pool");
    cloud.coords.reserve(3 * params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double u = rng.uniform(0.0, total);
        std::size_t lo = 0, hi = pool_size - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] > u)
                hi = mid;
            else
                lo = mid + 1;
        }
        cloud.coords.insert(cloud.coords.end(), pool.begin() + 3 * lo, pool.begin() + 3 * lo + 3);
    }
    return cloud;
}

PointCloud gen_duplicated_lattice(std::size_t n, std::uint64_t rng_seed) {
    require(n > 0, errc::empty_input, "sample size must be positive");
    constexpr int kWidth = 24, kHeight = 12;
    std::vector<double> cumulative(kWidth * kHeight);
    double total = 0.0;
    for (int a = 0; a < kWidth; ++a)
        for (int b = 0; b < kHeight; ++b) {
            total += std::exp2(-static_cast<double>(a) * static_cast<double>(b));
            cumulative[a * kHeight + b] = total;
        }

    Rng rng(rng_seed);
    PointCloud cloud;
    cloud.n = n;
    cloud.dim = 2;
    cloud.coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform(0.0, total);
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] > u)
                hi = mid;
            else
                lo = mid + 1;
        }
        cloud.coords.push_back(static_cast<double>(lo / kHeight));
        cloud.coords.push_back(static_cast<double>(lo % kHeight));
    }
    return cloud;
}

PointCloud gen_noisy_circle(std::size_t n, double noise_sd, std::uint64_t rng_seed) {
    require(n > 0, errc::empty_input, "sample size must be positive");
    require(noise_sd >= 0.0, errc::invalid_weights, "noise sd must be nonnegative");
    Rng rng(rng_seed);
    PointCloud cloud;
    cloud.n = n;
    cloud.dim = 2;
    cloud.coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = rng.uniform(0.0, kTwoPi);
        cloud.coords.push_back(std::cos(t) + (noise_sd > 0.0 ? rng.normal(0.0, noise_sd) : 0.0));
        cloud.coords.push_back(std::sin(t) + (noise_sd > 0.0 ? rng.normal(0.0, noise_sd) : 0.0));
    }
    return cloud;
}

}  // namespace lmk
