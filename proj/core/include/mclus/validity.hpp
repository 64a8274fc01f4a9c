#ifndef MCLUS_VALIDITY_HPP
#define MCLUS_VALIDITY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mclus/clustering.hpp"
#include "mclus/distances.hpp"
#include "mclus/kde.hpp"
#include "mclus/types.hpp"

namespace mclus {

// The kde-mode validity index. Per member: the mode of its within-cluster
// distance sample is compared against the smallest mode among its
// cross-cluster distance samples; the index is the mean of the per-member
// ratios. Distance samples are assembled in ascending order so results are
// independent of member enumeration order.

struct MemberScore {
    std::size_t member = 0;
    std::optional<double> own_mode;  // absent when the member's cluster is a singleton
    int nearest = 0;                 // nearest other cluster id
    double nearest_mode = 0.0;
    double score = 0.0;              // in [-1, 1]
};

/// Mode of the member's within-cluster distances. Absent for a singleton
/// cluster; the single distance itself for a two-member cluster.
std::optional<double> own_cluster_mode(std::size_t member, const Clustering& clustering,
                                       const DistanceMatrix& dist, const KdeConfig& config);

/// Mode of the distances from `member` to every member of cluster `other`;
/// the single distance itself when `other` is a singleton.
double cross_cluster_mode(std::size_t member, int other, const Clustering& clustering,
                          const DistanceMatrix& dist, const KdeConfig& config);

/// The other cluster with the smallest cross-cluster mode. Exact ties are
/// resolved randomly from the tied set via `seed`; the returned mode is the
/// shared minimum either way.
std::pair<int, double> nearest_cluster(std::size_t member, const Clustering& clustering,
                                       const DistanceMatrix& dist, const KdeConfig& config,
                                       std::uint64_t seed);

struct MclusResult {
    double value = 0.0;  // in (-1, 1)
    std::vector<MemberScore> member_scores;
};

/// The aggregate index: mean over members of
/// (nearest_mode - own_mode) / max(nearest_mode, own_mode), with 0 for
/// singleton members and for the both-modes-zero degeneracy.
MclusResult mclus(const Clustering& clustering, const DistanceMatrix& dist,
                  const KdeConfig& config, std::uint64_t seed);

/// Average silhouette width in [-1, 1]; singleton members score 0.
double asw(const Clustering& clustering, const DistanceMatrix& dist);

/// Smallest between-cluster distance over largest intra-cluster diameter.
/// Throws UndefinedIndex when every cluster diameter is zero.
double dunn(const Clustering& clustering, const DistanceMatrix& dist);

struct IndexSelection {
    bool mclus = true;
    bool asw = true;
    bool dunn = true;
};

struct IndexError {
    std::string index;  // "mclus" | "asw" | "dunn" | "clusterer"
    std::string message;
};

struct KSweepEntry {
    int k = 0;
    Clustering clustering;
    std::optional<double> mclus;
    std::optional<double> asw;
    std::optional<double> dunn;
    std::vector<MemberScore> member_scores;
    std::vector<IndexError> errors;
};

struct KhatEstimates {
    std::optional<int> mclus;
    std::optional<int> asw;
    std::optional<int> dunn;
};

struct ValidityReport {
    std::vector<KSweepEntry> per_k;
    KhatEstimates khat;
};

/// Runs `cluster_at` for every K in `k_range` (ascending, within
/// {2..n-1}), computes the selected indices, and takes each index's argmax
/// (ties toward the smallest K). Clusterer and index failures are recorded
/// per K instead of aborting; a K without a value is excluded from that
/// index's argmax.
ValidityReport estimate_k(const std::function<Clustering(int)>& cluster_at,
                          const DistanceMatrix& dist, const std::vector<int>& k_range,
                          const KdeConfig& config, const IndexSelection& selection,
                          std::uint64_t seed);

}  // namespace mclus

#endif  // MCLUS_VALIDITY_HPP
