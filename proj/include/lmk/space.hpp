#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lmk/error.hpp"

namespace lmk {

using index_t = std::size_t;

/// A finite space of N points with a nonnegative dissimilarity d(i, j) that
/// may be asymmetric; the only structural requirement is d(i,i) <= d(i,j)
/// for all j. Points at mutual dissimilarity <= colocation_tolerance are
/// treated as indistinguishable. Immutable after construction and safe to
/// share across threads.
///
/// Storage is either a dense row-major matrix or an n x p coordinate table
/// with distances evaluated on demand (Euclidean); the latter keeps memory
/// at O(n p) for large point clouds.
class DissimilaritySpace {
public:
    static DissimilaritySpace from_matrix(std::vector<double> values, std::size_t n,
                                          bool symmetric, double colocation_tolerance = 0.0);
    static DissimilaritySpace from_points(std::vector<double> coords, std::size_t n,
                                          std::size_t dim, double colocation_tolerance = 0.0);

    std::size_t size() const { return n_; }
    bool symmetric() const { return symmetric_; }
    double colocation_tolerance() const { return tolerance_; }

    double dissim(index_t i, index_t j) const {
        if (dense_) return matrix_[i * n_ + j];
        return point_distance(i, j);
    }

    // Fills out[0..n) with d(i, .). out must have size() elements.
    void dissim_row(index_t i, double* out) const;

    bool colocated(index_t i, index_t j) const {
        return dissim(i, j) <= tolerance_ && dissim(j, i) <= tolerance_;
    }

    bool has_points() const { return !dense_; }
    std::size_t point_dim() const { return dim_; }
    const std::vector<double>& coords() const { return coords_; }

    // Space restricted to a subset of points (indices into this space);
    // materializes the needed rows / coordinates.
    DissimilaritySpace subspace(const std::vector<index_t>& keep) const;

private:
    DissimilaritySpace() = default;

    double point_distance(index_t i, index_t j) const;

    std::size_t n_ = 0;
    bool symmetric_ = true;
    double tolerance_ = 0.0;
    bool dense_ = true;
    std::vector<double> matrix_;  // dense path, n_*n_
    std::vector<double> coords_;  // point path, n_*dim_
    std::size_t dim_ = 0;
};

/// Partition of [0, N) into co-location classes. Classes are ordered by
/// their smallest member and members are stored ascending; class_of maps a
/// point to its class index. uniq(X) = classes.size().
struct ColocationPartition {
    std::vector<std::vector<index_t>> classes;
    std::vector<index_t> class_of;

    std::size_t uniq() const { return classes.size(); }
};

DissimilaritySpace build_space(const std::vector<double>& matrix, std::size_t n,
                               bool symmetric, double tolerance = 0.0);

DissimilaritySpace euclidean_space(const std::vector<double>& points, std::size_t n,
                                   std::size_t dim, double tolerance = 0.0);

DissimilaritySpace cosine_distance_space(const std::vector<double>& points, std::size_t n,
                                         std::size_t dim, double tolerance = 0.0);

/// Column of a mixed-type table for the Gower dissimilarity: either numeric
/// values or categorical codes (compared by exact equality).
struct GowerColumn {
    enum class Kind { numeric, categorical };
    Kind kind = Kind::numeric;
    std::vector<double> numeric;     // used when kind == numeric
    std::vector<std::string> codes;  // used when kind == categorical
    std::optional<double> range;     // numeric span; computed from data when absent
};

DissimilaritySpace gower_distance_space(const std::vector<GowerColumn>& columns,
                                        double tolerance = 0.0);

ColocationPartition colocation(const DissimilaritySpace& space);

// Closure of Y under co-location: Y plus every point sharing a class with
// a member. Returned sorted ascending.
std::vector<index_t> colocation_closure(const DissimilaritySpace& space,
                                        const std::vector<index_t>& y);

}  // namespace lmk
