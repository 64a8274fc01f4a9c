#ifndef MCLUS_DISTANCES_HPP
#define MCLUS_DISTANCES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mclus/errors.hpp"
#include "mclus/types.hpp"

namespace mclus {

enum class Metric { euclidean, gower, cid };

Metric metric_from_string(const std::string& name);
std::string to_string(Metric m);

/// Symmetric nonnegative interpoint distances with zero diagonal. The
/// triangle inequality is not assumed anywhere downstream.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    /// Sets d(i,j) and d(j,i). Rejects negative and non-finite values.
    void set(std::size_t i, std::size_t j, double value);

    /// Builds from a full square row-major buffer; validates the invariants.
    static DistanceMatrix from_square(std::size_t n, std::span<const double> values);

    /// All pairwise distances in lexicographic (i < j) order; the pooled
    /// sample used by the global bandwidth scope.
    std::vector<double> upper_triangle() const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// sqrt(sum (a_i - b_i)^2).
double euclidean(std::span<const double> a, std::span<const double> b);

/// Extended Gower dissimilarity for mixed continuous/binary records in
/// [0, 1]. A variable contributes when both values are present and, for
/// continuous variables, its dataset range is positive.
double gower_extended(std::span<const double> a, std::span<const double> b,
                      std::span<const VariableSpec> spec);

/// Complexity-invariance distance between equal-length series:
/// ED(q,c) * max(CE)/max(min(CE), 1e-12), CE(x) = sqrt(sum (x_{i+1}-x_i)^2).
double cid(std::span<const double> q, std::span<const double> c);

/// Variable specs for a dataset: kinds copied, continuous ranges computed
/// over all members (missing values ignored).
std::vector<VariableSpec> make_variable_specs(const DataSet& data);

/// Materializes the full pairwise matrix under the chosen metric. Metric
/// failures are rethrown with the offending pair identified.
DistanceMatrix pairwise_matrix(const DataSet& data, Metric metric);

}  // namespace mclus

#endif  // MCLUS_DISTANCES_HPP
