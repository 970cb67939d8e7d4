#pragma once

#include <cstdint>
#include <vector>

#include "lmk/error.hpp"
#include "lmk/rng.hpp"

namespace lmk {

/// Planar point cloud stored row-major (n x 2), spatial (n x 3).
struct PointCloud {
    std::vector<double> coords;
    std::size_t n = 0;
    std::size_t dim = 0;
};

/// Circle sample from a three-part mixture: a uniform angle with weight w0,
/// and two wrapped Gaussians at angles 0 and mu2 with common spread sigma
/// and weights in ratio w1/w2 = ratio.
struct BumpyCircleParams {
    std::size_t n = 0;
    double w0 = 0.0;
    double mu2 = 3.14159265358979323846;
    double sigma = 0.5235987755982988;  // pi/6
    double ratio = 1.0;
    std::uint64_t rng_seed = 0;
};

PointCloud gen_bumpy_circle(const BumpyCircleParams& params);

/// One large circle (the string) with smaller, denser circles (the beads)
/// centered evenly along it.
struct NecklaceParams {
    std::size_t n_string = 120;
    std::size_t n_beads = 180;  // points per bead
    std::size_t bead_count = 6;
    double string_radius = 1.0;
    double bead_radius = 0.15;
    std::uint64_t rng_seed = 0;
};

PointCloud gen_necklace(const NecklaceParams& params);

enum class SphereMode { uniform, skewed, uniform_boosted, skewed_boosted };

/// Samples from the unit sphere. Skewed sampling rejects a uniform draw at
/// polar angle phi when a uniform t exceeds (phi/pi)^alpha; boosted modes
/// draw a pool of n * pool_fraction points and resample n with replacement
/// with mass proportional to (phi/pi)^beta.
struct SphereSampleParams {
    std::size_t n = 0;
    SphereMode mode = SphereMode::uniform;
    double alpha = 4.0;
    double beta = 4.0;
    double pool_fraction = 1.0 / 6.0;
    std::uint64_t rng_seed = 0;
};

PointCloud gen_sphere(const SphereSampleParams& params);

/// I.i.d. draws from the integer lattice [0,23] x [0,11] with mass
/// proportional to 2^(-ab); duplicates are expected and preserved.
PointCloud gen_duplicated_lattice(std::size_t n, std::uint64_t rng_seed);

/// Uniform circle sample with i.i.d. planar Gaussian noise of the given sd.
PointCloud gen_noisy_circle(std::size_t n, double noise_sd, std::uint64_t rng_seed);

}  // namespace lmk
