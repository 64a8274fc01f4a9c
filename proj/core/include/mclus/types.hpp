#ifndef MCLUS_TYPES_HPP
#define MCLUS_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mclus/errors.hpp"

namespace mclus {

enum class VarKind { continuous, binary };

/// Per-variable metadata for mixed-type dissimilarities. `range` is the
/// max-min spread of a continuous variable over the whole working dataset;
/// it is ignored for binary variables.
struct VariableSpec {
    VarKind kind = VarKind::continuous;
    double range = 0.0;
};

/// Dense row-major numeric matrix.
struct Matrix {
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : values(r * c, fill), rows(r), cols(c) {}

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
};

/// A dataset of n members by v typed variables. Missing values are NaN and
/// participate only in dissimilarities that tolerate them (extended Gower).
struct DataSet {
    Matrix data;
    std::vector<VarKind> kinds;       // size v
    std::vector<std::string> ids;     // size n; defaults to "1".."n"

    std::size_t n() const { return data.rows; }
    std::size_t v() const { return data.cols; }
    std::span<const double> member(std::size_t i) const { return data.row(i); }

    /// Fills default ids "1".."n" when none were provided.
    void ensure_ids();

    bool all_continuous() const;

    /// The numeric matrix, available only for fully continuous data with no
    /// missing entries (k-means and time-series distances need this).
    const Matrix& as_matrix() const;
};

/// A hard partition: labels[i] in {1..K}, each cluster id occurring at
/// least once.
struct Clustering {
    std::vector<int> labels;
    int k = 0;

    std::size_t n() const { return labels.size(); }

    /// Throws InvalidK when the label vector violates the invariants.
    void validate() const;

    /// Member indices grouped by cluster id; result[c] lists cluster c+1
    /// in ascending member order.
    std::vector<std::vector<std::size_t>> groups() const;
};

inline bool is_missing(double x) { return std::isnan(x); }

}  // namespace mclus

#endif  // MCLUS_TYPES_HPP
