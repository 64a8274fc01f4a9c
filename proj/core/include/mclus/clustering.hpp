#ifndef MCLUS_CLUSTERING_HPP
#define MCLUS_CLUSTERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mclus/distances.hpp"
#include "mclus/types.hpp"

namespace mclus {

enum class Linkage {
    average,   // UPGMA: minimal mean inter-cluster distance
    ward_d2,   // Lance-Williams on squared distances, heights square-rooted
    ward_d,    // Lance-Williams on the distances as given
};

Linkage linkage_from_string(const std::string& name);

/// Agglomeration history. Leaves are clusters 0..n-1; merge s creates
/// cluster n+s. Merges are stored in execution order.
struct Dendrogram {
    struct Merge {
        int left = 0;      // smaller cluster id of the pair
        int right = 0;
        double height = 0.0;
    };

    std::size_t n = 0;
    std::vector<Merge> merges;  // exactly n-1

    /// Partition into exactly K clusters by applying the first n-K merges.
    /// Labels are numbered by first appearance in member order.
    Clustering cut(int k) const;
};

Dendrogram hierarchical(const DistanceMatrix& dist, Linkage linkage);

struct KMedoidsResult {
    Clustering clustering;
    std::vector<std::size_t> medoids;  // ascending member indices
    double cost = 0.0;                 // sum of distances to assigned medoids
    int swaps = 0;
};

/// PAM: greedy build phase, then swap phase to a local optimum. All ties
/// break lowest-index-first, so the result does not depend on `seed`; the
/// parameter is kept for interface stability.
KMedoidsResult kmedoids(const DistanceMatrix& dist, int k, std::uint64_t seed = 0);

struct KMeansResult {
    Clustering clustering;
    Matrix centers;       // k x d
    double wcss = 0.0;
    int iterations = 0;   // transfer sweeps of the winning run
    int reseeds = 0;      // runs restarted due to an empty initial cluster
};

/// Hartigan-Wong k-means, best of `nstart` runs by WCSS. Each run draws K
/// distinct members as initial centers from a stream derived from `seed`.
KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed, int nstart = 10);

/// Within-cluster sum of squares of an arbitrary labeling.
double wcss(const Matrix& data, const Clustering& clustering);

}  // namespace mclus

#endif  // MCLUS_CLUSTERING_HPP
