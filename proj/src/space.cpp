#include "lmk/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lmk {

namespace {

// Union-find over point indices; colocation classes are its components.
struct DisjointSets {
    std::vector<index_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), index_t{0});
    }

    index_t find(index_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    void unite(index_t a, index_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void validate_matrix(const std::vector<double>& values, std::size_t n, bool symmetric) {
    require(values.size() == n * n, errc::non_square, "dissimilarity table is not n x n");
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = values.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            require(std::isfinite(row[j]) && row[j] >= 0.0, errc::negative_entry,
                    "dissimilarity entries must be finite and nonnegative");
            require(row[i] <= row[j], errc::relative_rank_violation,
                    "d(i,i) exceeds d(i,j) at row " + std::to_string(i));
            if (symmetric)
                require(row[j] == values[j * n + i], errc::asymmetry_under_symmetric_flag,
                        "matrix is asymmetric but the symmetric flag is set");
        }
    }
}

}  // namespace

DissimilaritySpace DissimilaritySpace::from_matrix(std::vector<double> values, std::size_t n,
                                                   bool symmetric, double tolerance) {
    require(n > 0, errc::empty_input, "space must contain at least one point");
    validate_matrix(values, n, symmetric);
    DissimilaritySpace s;
    s.n_ = n;
    s.symmetric_ = symmetric;
    s.tolerance_ = tolerance;
    s.dense_ = true;
    s.matrix_ = std::move(values);
    return s;
}

DissimilaritySpace DissimilaritySpace::from_points(std::vector<double> coords, std::size_t n,
                                                   std::size_t dim, double tolerance) {
    require(n > 0, errc::empty_input, "point set is empty");
    require(dim > 0 && coords.size() == n * dim, errc::non_square,
            "coordinate table is not n x p");
    for (double v : coords)
        require(std::isfinite(v), errc::negative_entry, "coordinates must be finite");
    DissimilaritySpace s;
    s.n_ = n;
    s.symmetric_ = true;
    s.tolerance_ = tolerance;
    s.dense_ = false;
    s.coords_ = std::move(coords);
    s.dim_ = dim;
    return s;
}

double DissimilaritySpace::point_distance(index_t i, index_t j) const {
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

void DissimilaritySpace::dissim_row(index_t i, double* out) const {
    if (dense_) {
        const double* row = matrix_.data() + i * n_;
        std::copy(row, row + n_, out);
    } else {
        for (std::size_t j = 0; j < n_; ++j) out[j] = point_distance(i, j);
    }
}

DissimilaritySpace DissimilaritySpace::subspace(const std::vector<index_t>& keep) const {
    require(!keep.empty(), errc::empty_input, "subspace selection is empty");
    for (index_t i : keep)
        require(i < n_, errc::index_out_of_bounds, "subspace index out of range");
    DissimilaritySpace s;
    s.n_ = keep.size();
    s.symmetric_ = symmetric_;
    s.tolerance_ = tolerance_;
    s.dense_ = dense_;
    if (dense_) {
        s.matrix_.resize(keep.size() * keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b)
                s.matrix_[a * keep.size() + b] = matrix_[keep[a] * n_ + keep[b]];
    } else {
        s.dim_ = dim_;
        s.coords_.resize(keep.size() * dim_);
        for (std::size_t a = 0; a < keep.size(); ++a)
            std::copy(coords_.begin() + keep[a] * dim_, coords_.begin() + (keep[a] + 1) * dim_,
                      s.coords_.begin() + a * dim_);
    }
    return s;
}

DissimilaritySpace build_space(const std::vector<double>& matrix, std::size_t n, bool symmetric,
                               double tolerance) {
    return DissimilaritySpace::from_matrix(matrix, n, symmetric, tolerance);
}

DissimilaritySpace euclidean_space(const std::vector<double>& points, std::size_t n,
                                   std::size_t dim, double tolerance) {
    return DissimilaritySpace::from_points(points, n, dim, tolerance);
}

DissimilaritySpace cosine_distance_space(const std::vector<double>& points, std::size_t n,
                                         std::size_t dim, double tolerance) {
    require(n > 0, errc::empty_input, "point set is empty");
    require(dim > 0 && points.size() == n * dim, errc::non_square,
            "coordinate table is not n x p");
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += points[i * dim + k] * points[i * dim + k];
        require(s > 0.0, errc::zero_vector, "cosine distance undefined for all-zero row");
        norms[i] = std::sqrt(s);
    }
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += points[i * dim + k] * points[j * dim + k];
            const double d = std::max(0.0, 1.0 - dot / (norms[i] * norms[j]));
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    return DissimilaritySpace::from_matrix(std::move(m), n, /*symmetric=*/true, tolerance);
}

DissimilaritySpace gower_distance_space(const std::vector<GowerColumn>& columns,
                                        double tolerance) {
    require(!columns.empty(), errc::empty_input, "Gower table has no columns");
    std::size_t n = 0;
    for (const auto& col : columns) {
        const bool numeric = col.kind == GowerColumn::Kind::numeric;
        require(numeric ? col.codes.empty() : col.numeric.empty(), errc::mixed_type_column,
                "column holds both numeric and categorical data");
        const std::size_t len = numeric ? col.numeric.size() : col.codes.size();
        if (n == 0) n = len;
        require(len == n, errc::length_mismatch, "Gower columns have unequal lengths");
    }
    require(n > 0, errc::empty_input, "Gower table has no records");

    std::vector<double> ranges(columns.size(), 1.0);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].kind != GowerColumn::Kind::numeric) continue;
        double range;
        if (columns[c].range) {
            range = *columns[c].range;
        } else {
            auto [lo, hi] = std::minmax_element(columns[c].numeric.begin(),
                                                columns[c].numeric.end());
            range = *hi - *lo;
        }
        require(range > 0.0, errc::zero_range,
                "numeric column " + std::to_string(c) + " has zero range");
        ranges[c] = range;
    }

    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double total = 0.0;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if (columns[c].kind == GowerColumn::Kind::numeric)
                    total += std::abs(columns[c].numeric[i] - columns[c].numeric[j]) / ranges[c];
                else
                    total += columns[c].codes[i] == columns[c].codes[j] ? 0.0 : 1.0;
            }
            const double d = total / static_cast<double>(columns.size());
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    return DissimilaritySpace::from_matrix(std::move(m), n, /*symmetric=*/true, tolerance);
}

ColocationPartition colocation(const DissimilaritySpace& space) {
    const std::size_t n = space.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (space.colocated(i, j)) sets.unite(i, j);

    ColocationPartition part;
    part.class_of.assign(n, 0);
    std::vector<index_t> root_to_class(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const index_t root = sets.find(i);
        if (root_to_class[root] == n) {
            root_to_class[root] = part.classes.size();
            part.classes.emplace_back();
        }
        part.class_of[i] = root_to_class[root];
        part.classes[root_to_class[root]].push_back(i);
    }
    return part;
}

std::vector<index_t> colocation_closure(const DissimilaritySpace& space,
                                        const std::vector<index_t>& y) {
    std::vector<char> in_closure(space.size(), 0);
    for (index_t i : y) {
        require(i < space.size(), errc::index_out_of_bounds, "closure index out of range");
        for (std::size_t j = 0; j < space.size(); ++j)
            if (j == i || space.colocated(i, j)) in_closure[j] = 1;
    }
    std::vector<index_t> out;
    for (std::size_t j = 0; j < space.size(); ++j)
        if (in_closure[j]) out.push_back(j);
    return out;
}

}  // namespace lmk
